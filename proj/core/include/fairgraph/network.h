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

#ifndef FAIRGRAPH_NETWORK_H_
#define FAIRGRAPH_NETWORK_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairgraph/common.h"

namespace fairgraph {

// Disjoint train/validation/test node index sets.
struct Splits {
  std::vector<int> train;
  std::vector<int> val;
  std::vector<int> test;

  bool operator==(const Splits&) const = default;
};

// An undirected attributed network with a per-node sensitive group.
//
// The adjacency is dense, binary, symmetric and has a zero diagonal. Group
// ids are 0..num_groups()-1 and every group has at least one member. The
// object is immutable; the with_* methods return modified copies that are
// validated again.
class AttributedNetwork {
 public:
  // Throws DomainError if any invariant is violated.
  AttributedNetwork(Matrix adjacency, Matrix attributes,
                    std::vector<int> sensitive,
                    std::optional<std::vector<int>> labels = std::nullopt,
                    std::optional<Splits> splits = std::nullopt);

  int num_nodes() const { return static_cast<int>(adjacency_.rows()); }
  int num_attributes() const { return static_cast<int>(attributes_.cols()); }
  int num_groups() const { return num_groups_; }

  const Matrix& adjacency() const { return adjacency_; }
  const Matrix& attributes() const { return attributes_; }
  const std::vector<int>& sensitive() const { return sensitive_; }
  const std::optional<std::vector<int>>& labels() const { return labels_; }
  const std::optional<Splits>& splits() const { return splits_; }

  // Optional column names, one per attribute column when present.
  const std::vector<std::string>& attribute_names() const {
    return attribute_names_;
  }

  // True when the attribute columns already live in the [0,1] min-max frame
  // (the debiaser emits such networks); bias metrics then skip the
  // normalization step.
  bool attributes_normalized() const { return attributes_normalized_; }

  // Node indices of group g, ascending.
  std::vector<int> group_members(int g) const;
  std::vector<int> group_sizes() const;
  // Undirected edge count.
  long long num_edges() const;

  AttributedNetwork with_adjacency(Matrix adjacency) const;
  AttributedNetwork with_attributes(Matrix attributes,
                                    bool normalized = false) const;
  AttributedNetwork with_labels(std::vector<int> labels) const;
  AttributedNetwork with_splits(Splits splits) const;
  AttributedNetwork with_attribute_names(std::vector<std::string> names) const;

 private:
  void validate();

  Matrix adjacency_;
  Matrix attributes_;
  std::vector<int> sensitive_;
  std::optional<std::vector<int>> labels_;
  std::optional<Splits> splits_;
  std::vector<std::string> attribute_names_;
  int num_groups_ = 0;
  bool attributes_normalized_ = false;
};

// D^{-1/2} A D^{-1/2}. Rows and columns of degree-0 nodes are zero. Works for
// any symmetric nonnegative matrix, including continuous edge weights.
Matrix degree_normalize(const Matrix& adjacency);

// D^{-1/2} (D - A) D^{-1/2}, with a zero diagonal entry for degree-0 nodes.
Matrix normalized_laplacian(const Matrix& adjacency);

// D^{-1/2} (A + I) D^{-1/2} with D the degrees of A + I: the propagation
// step of a graph convolution layer.
Matrix self_loop_normalize(const Matrix& adjacency);

// Per-column affine map onto [0,1]; constant columns become 0.5.
Matrix minmax_normalize(const Matrix& attributes);

// beta_h proportional to 2^{-h}, h = 1..horizon, normalized to sum to one.
std::vector<double> default_betas(int horizon);

// P_norm = alpha * A_norm + (1 - alpha) * I together with the hop weights used
// by the propagation matrix.
class PropagationOperator {
 public:
  // Throws DomainError unless alpha is in [0,1] and betas is nonempty,
  // positive and non-increasing.
  PropagationOperator(const Matrix& a_norm, double alpha,
                      std::vector<double> betas);

  const Matrix& p_norm() const { return p_norm_; }
  double alpha() const { return alpha_; }
  int horizon() const { return static_cast<int>(betas_.size()); }
  const std::vector<double>& betas() const { return betas_; }

 private:
  Matrix p_norm_;
  double alpha_;
  std::vector<double> betas_;
};

// Checks alpha/betas without building the operator.
void validate_propagation_params(double alpha, std::span<const double> betas);

}  // namespace fairgraph

#endif  // FAIRGRAPH_NETWORK_H_
