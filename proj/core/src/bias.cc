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

#include "fairgraph/bias.h"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "fairgraph/wasserstein.h"

namespace fairgraph {
namespace {

double mean_of(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  return v.empty() ? 0.0 : total / static_cast<double>(v.size());
}

void require_group(std::span<const int> sensitive, int g) {
  for (int s : sensitive) {
    if (s == g) return;
  }
  throw DomainError("group " + std::to_string(g) + " has no members");
}

}  // namespace

Matrix bias_frame(const AttributedNetwork& net) {
  return net.attributes_normalized() ? net.attributes()
                                     : minmax_normalize(net.attributes());
}

std::vector<double> group_w1_per_dim(const Matrix& values,
                                     std::span<const int> sensitive, int g0,
                                     int g1) {
  if (static_cast<Eigen::Index>(sensitive.size()) != values.rows()) {
    throw DomainError("sensitive vector length does not match row count");
  }
  require_group(sensitive, g0);
  require_group(sensitive, g1);
  std::vector<double> out(values.cols(), 0.0);
  parallel_for(out.size(), [&](std::size_t m) {
    std::vector<double> s0, s1;
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      if (sensitive[i] == g0) s0.push_back(values(i, m));
      if (sensitive[i] == g1) s1.push_back(values(i, m));
    }
    out[m] = wasserstein1(s0, s1);
  });
  return out;
}

BiasValue attribute_bias(const Matrix& x_norm, std::span<const int> sensitive,
                         int g0, int g1) {
  BiasValue v;
  v.per_dim = group_w1_per_dim(x_norm, sensitive, g0, g1);
  v.mean = mean_of(v.per_dim);
  return v;
}

BiasValue attribute_bias(const AttributedNetwork& net) {
  if (net.num_groups() != 2) {
    throw DomainError("attribute_bias needs exactly two groups; use "
                      "pairwise_bias for more");
  }
  return attribute_bias(bias_frame(net), net.sensitive());
}

Matrix propagation_matrix(const PropagationOperator& op) {
  const Matrix& p = op.p_norm();
  Matrix power = p;
  Matrix total = op.betas()[0] * p;
  for (int h = 1; h < op.horizon(); ++h) {
    power = power * p;
    total += op.betas()[h] * power;
  }
  return total;
}

PropagationOperator make_operator(const Matrix& adjacency,
                                  const BiasParams& params) {
  return PropagationOperator(degree_normalize(adjacency), params.alpha,
                             params.betas);
}

BiasValue structural_bias(const Matrix& x_norm, const Matrix& propagation,
                          std::span<const int> sensitive, int g0, int g1) {
  const Matrix reach = propagation * x_norm;
  return attribute_bias(reach, sensitive, g0, g1);
}

BiasValue structural_bias(const AttributedNetwork& net,
                          const PropagationOperator& op) {
  if (net.num_groups() != 2) {
    throw DomainError("structural_bias needs exactly two groups; use "
                      "pairwise_bias for more");
  }
  return structural_bias(bias_frame(net), propagation_matrix(op),
                         net.sensitive());
}

namespace {

PairwiseBias pairwise_from(const Matrix& x_norm, const Matrix& propagation,
                           std::span<const int> sensitive, int groups) {
  PairwiseBias out;
  out.num_groups = groups;
  out.attr = Matrix::Zero(groups, groups);
  out.stru = Matrix::Zero(groups, groups);
  const Matrix reach = propagation * x_norm;
  for (int i = 0; i < groups; ++i) {
    for (int j = i + 1; j < groups; ++j) {
      out.attr(i, j) = out.attr(j, i) =
          attribute_bias(x_norm, sensitive, i, j).mean;
      out.stru(i, j) = out.stru(j, i) =
          attribute_bias(reach, sensitive, i, j).mean;
    }
  }
  return out;
}

}  // namespace

PairwiseBias pairwise_bias(const AttributedNetwork& net,
                           const PropagationOperator& op) {
  return pairwise_from(bias_frame(net), propagation_matrix(op), net.sensitive(),
                       net.num_groups());
}

BiasReport measure_bias(const AttributedNetwork& net, const BiasParams& params) {
  return measure_bias(net, net.adjacency(), params);
}

BiasReport measure_bias(const AttributedNetwork& net, const Matrix& adjacency,
                        const BiasParams& params) {
  if (adjacency.rows() != net.num_nodes() || adjacency.cols() != net.num_nodes()) {
    throw DomainError("adjacency shape does not match the network");
  }
  const PropagationOperator op = make_operator(adjacency, params);
  const Matrix x_norm = bias_frame(net);
  const Matrix reach = propagation_matrix(op) * x_norm;
  const int groups = net.num_groups();
  const int dims = net.num_attributes();

  BiasReport report;
  report.params = params;
  report.num_groups = groups;
  report.per_dim_attr.assign(dims, 0.0);
  report.per_dim_stru.assign(dims, 0.0);
  report.pairwise.num_groups = groups;
  report.pairwise.attr = Matrix::Zero(groups, groups);
  report.pairwise.stru = Matrix::Zero(groups, groups);
  int pairs = 0;
  for (int i = 0; i < groups; ++i) {
    for (int j = i + 1; j < groups; ++j) {
      const BiasValue a = attribute_bias(x_norm, net.sensitive(), i, j);
      const BiasValue s = attribute_bias(reach, net.sensitive(), i, j);
      report.pairwise.attr(i, j) = report.pairwise.attr(j, i) = a.mean;
      report.pairwise.stru(i, j) = report.pairwise.stru(j, i) = s.mean;
      for (int m = 0; m < dims; ++m) {
        report.per_dim_attr[m] += a.per_dim[m];
        report.per_dim_stru[m] += s.per_dim[m];
      }
      ++pairs;
    }
  }
  for (int m = 0; m < dims; ++m) {
    report.per_dim_attr[m] /= pairs;
    report.per_dim_stru[m] /= pairs;
  }
  report.b_attr = mean_of(report.per_dim_attr);
  report.b_stru = mean_of(report.per_dim_stru);
  return report;
}

SpectralResponse frequency_response(const Matrix& adjacency,
                                    std::span<const double> betas,
                                    std::optional<double> alpha) {
  const Matrix laplacian = normalized_laplacian(adjacency);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(laplacian);
  if (solver.info() != Eigen::Success) {
    throw DomainError("eigendecomposition of the normalized Laplacian failed");
  }
  const Vector& lambda = solver.eigenvalues();
  const Matrix& basis = solver.eigenvectors();

  SpectralResponse out;
  out.lambda_max = lambda.maxCoeff();
  if (!(out.lambda_max > 0.0)) {
    throw DomainError("frequency response needs a graph with at least one edge");
  }
  out.matched_alpha = 1.0 / out.lambda_max;
  out.alpha = alpha.value_or(out.matched_alpha);
  out.alpha_matches = std::abs(out.alpha - out.matched_alpha) <= 1e-9;

  const PropagationOperator op(degree_normalize(adjacency), out.alpha,
                               std::vector<double>(betas.begin(), betas.end()));
  Vector response(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double base = 1.0 - lambda(i) / out.lambda_max;
    double power = 1.0, total = 0.0;
    for (double beta : betas) {
      power *= base;
      total += beta * power;
    }
    response(i) = total;
  }
  out.eigenvalues.assign(lambda.data(), lambda.data() + lambda.size());
  out.response.assign(response.data(), response.data() + response.size());
  const Matrix rebuilt = basis * response.asDiagonal() * basis.transpose();
  out.residual = (rebuilt - propagation_matrix(op)).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace fairgraph
