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

#ifndef FAIRGRAPH_SYNTH_H_
#define FAIRGRAPH_SYNTH_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "fairgraph/network.h"

namespace fairgraph::synth {

// Edge probabilities of the community generators.
inline constexpr double kUnbiasedEdgeProb = 2e-3;
inline constexpr double kDenseCommunityProb = 5e-2;
inline constexpr double kRestCommunityProb = 1e-2;
inline constexpr double kCrossCommunityProb = 2e-4;

struct SynthConfig {
  int n_nodes = 1000;
  std::uint64_t seed = 0;
  // Size of each of the two dense communities; defaults to n_nodes / 4.
  std::optional<int> t;
  // Standard deviation of the Gaussian noise added before label ranking.
  double noise_sigma = 0.5;
  // Uniform[0,1] columns appended by attach_labels_and_padding; the ternary
  // generator uses this many N(0,1) columns after its two shifted ones.
  int extra_dims = 8;

  int community_size() const { return t.value_or(n_nodes / 4); }
};

// Throws DomainError for odd or nonpositive n_nodes, negative sizes, or
// 2t > n_nodes.
void validate(const SynthConfig& cfg);

// Two N(-1.5, 1) / N(1.5, 1) attribute columns for groups 0 / 1 and an
// Erdos-Renyi structure independent of the groups. Nodes 0..n/2-1 are group
// 0. The second half of the nodes are group 1.
AttributedNetwork gen_case_biased_attributes(const SynthConfig& cfg);

// Community id per node for the biased-structure case: 0 for the top-t
// group-1 nodes by attribute sum, 1 for the bottom-t group-0 nodes, 2 for the
// rest. Ranking is descending with ties broken by node index.
std::vector<int> biased_structure_communities(const Matrix& attributes,
                                              const std::vector<int>& sensitive,
                                              int t);

// Two N(0,1) attribute columns for everyone and a structure in which the two
// communities above are dense, the rest forms a sparser third community, and
// each dense community links sparsely to the third one. The two dense
// communities are never linked to each other.
AttributedNetwork gen_case_biased_structure(const SynthConfig& cfg);

// Appends cfg.extra_dims Uniform[0,1] columns and sets labels to 1 for the
// top half of nodes ranked by (extra col 0 + extra col 1 + noise).
AttributedNetwork attach_labels_and_padding(const AttributedNetwork& net,
                                            const SynthConfig& cfg);

// Three equal communities, one per group (n_nodes must be divisible by 3).
// Columns 0 and 1 are N(-1,1), N(0,1), N(1,1) by group; the remaining
// cfg.extra_dims columns are N(0,1). Labels rank columns 2 and 3 plus noise.
AttributedNetwork gen_ternary(const SynthConfig& cfg);

// X after one graph-convolution propagation step, D^-1/2 (A+I) D^-1/2 X.
Matrix one_step_propagation_demo(const AttributedNetwork& net);

}  // namespace fairgraph::synth

#endif  // FAIRGRAPH_SYNTH_H_
