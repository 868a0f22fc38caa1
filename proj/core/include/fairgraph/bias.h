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

#ifndef FAIRGRAPH_BIAS_H_
#define FAIRGRAPH_BIAS_H_

#include <optional>
#include <span>
#include <vector>

#include "fairgraph/network.h"

namespace fairgraph {

// Propagation settings shared by the structural metric and the debiaser.
struct BiasParams {
  double alpha = 0.5;
  std::vector<double> betas = {2.0 / 3.0, 1.0 / 3.0};

  int horizon() const { return static_cast<int>(betas.size()); }
};

// A bias value: mean over attribute dimensions plus the per-dimension terms.
struct BiasValue {
  double mean = 0.0;
  std::vector<double> per_dim;
};

// Group-pair tables (G x G, symmetric, zero diagonal).
struct PairwiseBias {
  int num_groups = 0;
  Matrix attr;
  Matrix stru;
};

struct BiasReport {
  double b_attr = 0.0;
  double b_stru = 0.0;
  std::vector<double> per_dim_attr;
  std::vector<double> per_dim_stru;
  BiasParams params;
  int num_groups = 2;
  // Present for every report; for G == 2 it holds the single pair.
  PairwiseBias pairwise;
};

// The attribute matrix in the frame the metrics operate on: per-column
// min-max normalized, unless the network says it already is.
Matrix bias_frame(const AttributedNetwork& net);

// Wasserstein-1 between groups g0 and g1 for each column of `values`.
// Dimensions are processed in parallel; each is a fixed sequential sum.
std::vector<double> group_w1_per_dim(const Matrix& values,
                                     std::span<const int> sensitive, int g0,
                                     int g1);

// Mean over columns of the group Wasserstein distances of `x_norm`.
BiasValue attribute_bias(const Matrix& x_norm, std::span<const int> sensitive,
                         int g0 = 0, int g1 = 1);
// Binary-group attribute bias of a network. Throws DomainError if G != 2.
BiasValue attribute_bias(const AttributedNetwork& net);

// sum_h beta_h * P_norm^h by iterated multiplication.
Matrix propagation_matrix(const PropagationOperator& op);

// Builds the propagation operator of `adjacency` under `params`.
PropagationOperator make_operator(const Matrix& adjacency,
                                  const BiasParams& params);

// Attribute bias of R = propagation * x_norm.
BiasValue structural_bias(const Matrix& x_norm, const Matrix& propagation,
                          std::span<const int> sensitive, int g0 = 0,
                          int g1 = 1);
BiasValue structural_bias(const AttributedNetwork& net,
                          const PropagationOperator& op);

// Both metrics restricted to each unordered group pair.
PairwiseBias pairwise_bias(const AttributedNetwork& net,
                           const PropagationOperator& op);

// Full report. For G > 2 the headline numbers (and per-dimension values) are
// the mean over all group pairs.
BiasReport measure_bias(const AttributedNetwork& net, const BiasParams& params);

// Same as above, with the structure supplied separately (for example a
// continuous debiased adjacency).
BiasReport measure_bias(const AttributedNetwork& net, const Matrix& adjacency,
                        const BiasParams& params);

// Spectral view of the propagation matrix: with alpha = 1/lambda_max the
// matrix equals U diag(response) U^T where L_norm = U diag(eigenvalues) U^T.
struct SpectralResponse {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> response;     // sum_h beta_h (1 - lambda/lambda_max)^h
  double lambda_max = 0.0;
  double alpha = 0.0;               // value used to build M_H
  double matched_alpha = 0.0;       // 1 / lambda_max
  bool alpha_matches = true;
  // max |U diag(response) U^T - M_H|
  double residual = 0.0;
};

// alpha defaults to 1/lambda_max. Requires a graph with at least one edge.
// The reconstruction identity needs every node to have positive degree;
// isolated nodes show up in the residual.
SpectralResponse frequency_response(const Matrix& adjacency,
                                    std::span<const double> betas,
                                    std::optional<double> alpha = std::nullopt);

}  // namespace fairgraph

#endif  // FAIRGRAPH_BIAS_H_
