// Copyright 2026 The fairgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fairgraph/network.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace fairgraph {

AttributedNetwork::AttributedNetwork(Matrix adjacency, Matrix attributes,
                                     std::vector<int> sensitive,
                                     std::optional<std::vector<int>> labels,
                                     std::optional<Splits> splits)
    : adjacency_(std::move(adjacency)),
      attributes_(std::move(attributes)),
      sensitive_(std::move(sensitive)),
      labels_(std::move(labels)),
      splits_(std::move(splits)) {
  validate();
}

void AttributedNetwork::validate() {
  const Eigen::Index n = adjacency_.rows();
  if (n == 0) throw DomainError("network must have at least one node");
  if (adjacency_.cols() != n) throw DomainError("adjacency must be square");
  if (n > kMaxNodes) {
    throw DomainError("network has " + std::to_string(n) +
                      " nodes; the dense representation is capped at " +
                      std::to_string(kMaxNodes));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (adjacency_(i, i) != 0.0) {
      throw DomainError("adjacency has a nonzero diagonal entry at node " +
                        std::to_string(i));
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double a = adjacency_(i, j);
      if (a != 0.0 && a != 1.0) throw DomainError("adjacency must be binary");
      if (a != adjacency_(j, i)) throw DomainError("adjacency must be symmetric");
    }
  }
  if (attributes_.rows() != n) {
    throw DomainError("attribute matrix has " +
                      std::to_string(attributes_.rows()) + " rows, expected " +
                      std::to_string(n));
  }
  if (!attributes_.allFinite()) throw DomainError("attributes must be finite");
  if (static_cast<Eigen::Index>(sensitive_.size()) != n) {
    throw DomainError("sensitive vector length does not match node count");
  }
  int max_group = -1;
  for (int s : sensitive_) {
    if (s < 0) throw DomainError("sensitive group ids must be nonnegative");
    max_group = std::max(max_group, s);
  }
  num_groups_ = max_group + 1;
  if (num_groups_ < 2) throw DomainError("at least two groups are required");
  std::vector<int> counts(num_groups_, 0);
  for (int s : sensitive_) ++counts[s];
  for (int g = 0; g < num_groups_; ++g) {
    if (counts[g] == 0) {
      throw DomainError("group " + std::to_string(g) + " has no members");
    }
  }
  if (labels_) {
    if (static_cast<Eigen::Index>(labels_->size()) != n) {
      throw DomainError("label vector length does not match node count");
    }
    for (int y : *labels_) {
      if (y != 0 && y != 1) throw DomainError("labels must be binary");
    }
  }
  if (splits_) {
    std::vector<char> seen(n, 0);
    for (const auto* part : {&splits_->train, &splits_->val, &splits_->test}) {
      for (int i : *part) {
        if (i < 0 || i >= n) throw DomainError("split index out of range");
        if (seen[i]) throw DomainError("splits must be pairwise disjoint");
        seen[i] = 1;
      }
    }
  }
  if (!attribute_names_.empty() &&
      static_cast<Eigen::Index>(attribute_names_.size()) != attributes_.cols()) {
    throw DomainError("attribute name count does not match attribute columns");
  }
}

std::vector<int> AttributedNetwork::group_members(int g) const {
  std::vector<int> members;
  for (int i = 0; i < num_nodes(); ++i) {
    if (sensitive_[i] == g) members.push_back(i);
  }
  return members;
}

std::vector<int> AttributedNetwork::group_sizes() const {
  std::vector<int> counts(num_groups_, 0);
  for (int s : sensitive_) ++counts[s];
  return counts;
}

long long AttributedNetwork::num_edges() const {
  long long twice = 0;
  for (Eigen::Index j = 0; j < adjacency_.cols(); ++j) {
    for (Eigen::Index i = 0; i < adjacency_.rows(); ++i) {
      if (adjacency_(i, j) != 0.0) ++twice;
    }
  }
  return twice / 2;
}

AttributedNetwork AttributedNetwork::with_adjacency(Matrix adjacency) const {
  AttributedNetwork copy = *this;
  copy.adjacency_ = std::move(adjacency);
  copy.validate();
  return copy;
}

AttributedNetwork AttributedNetwork::with_attributes(Matrix attributes,
                                                     bool normalized) const {
  AttributedNetwork copy = *this;
  if (attributes.cols() != attributes_.cols()) copy.attribute_names_.clear();
  copy.attributes_ = std::move(attributes);
  copy.attributes_normalized_ = normalized;
  copy.validate();
  return copy;
}

AttributedNetwork AttributedNetwork::with_labels(std::vector<int> labels) const {
  AttributedNetwork copy = *this;
  copy.labels_ = std::move(labels);
  copy.validate();
  return copy;
}

AttributedNetwork AttributedNetwork::with_splits(Splits splits) const {
  AttributedNetwork copy = *this;
  copy.splits_ = std::move(splits);
  copy.validate();
  return copy;
}

AttributedNetwork AttributedNetwork::with_attribute_names(
    std::vector<std::string> names) const {
  AttributedNetwork copy = *this;
  copy.attribute_names_ = std::move(names);
  copy.validate();
  return copy;
}

namespace {

Vector inverse_sqrt_degrees(const Matrix& adjacency) {
  Vector d = adjacency.rowwise().sum();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    d(i) = d(i) > 0.0 ? 1.0 / std::sqrt(d(i)) : 0.0;
  }
  return d;
}

}  // namespace

Matrix degree_normalize(const Matrix& adjacency) {
  if (adjacency.rows() != adjacency.cols()) {
    throw DomainError("degree_normalize expects a square matrix");
  }
  const Vector s = inverse_sqrt_degrees(adjacency);
  return s.asDiagonal() * adjacency * s.asDiagonal();
}

Matrix normalized_laplacian(const Matrix& adjacency) {
  Matrix laplacian = -degree_normalize(adjacency);
  const Vector d = adjacency.rowwise().sum();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) > 0.0) laplacian(i, i) += 1.0;
  }
  return laplacian;
}

Matrix self_loop_normalize(const Matrix& adjacency) {
  Matrix with_loops = adjacency;
  with_loops.diagonal().array() += 1.0;
  return degree_normalize(with_loops);
}

Matrix minmax_normalize(const Matrix& attributes) {
  Matrix out(attributes.rows(), attributes.cols());
  for (Eigen::Index m = 0; m < attributes.cols(); ++m) {
    if (attributes.rows() == 0) break;
    const double lo = attributes.col(m).minCoeff();
    const double hi = attributes.col(m).maxCoeff();
    if (hi > lo) {
      out.col(m) = (attributes.col(m).array() - lo) / (hi - lo);
    } else {
      out.col(m).setConstant(0.5);
    }
  }
  return out;
}

std::vector<double> default_betas(int horizon) {
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  std::vector<double> betas(horizon);
  double total = 0.0;
  for (int h = 0; h < horizon; ++h) {
    betas[h] = std::ldexp(1.0, -(h + 1));
    total += betas[h];
  }
  for (double& b : betas) b /= total;
  return betas;
}

void validate_propagation_params(double alpha, std::span<const double> betas) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("alpha must lie in [0,1]");
  }
  if (betas.empty()) throw DomainError("at least one beta weight is required");
  for (std::size_t h = 0; h < betas.size(); ++h) {
    if (!(betas[h] > 0.0) || !std::isfinite(betas[h])) {
      throw DomainError("beta weights must be positive");
    }
    if (h > 0 && betas[h] > betas[h - 1]) {
      throw DomainError("beta weights must be non-increasing");
    }
  }
}

PropagationOperator::PropagationOperator(const Matrix& a_norm, double alpha,
                                         std::vector<double> betas)
    : alpha_(alpha), betas_(std::move(betas)) {
  validate_propagation_params(alpha_, betas_);
  if (a_norm.rows() != a_norm.cols()) {
    throw DomainError("propagation operator needs a square matrix");
  }
  p_norm_ = alpha_ * a_norm;
  p_norm_.diagonal().array() += 1.0 - alpha_;
}

}  // namespace fairgraph
