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

#include "fairgraph/synth.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace fairgraph::synth {
namespace {

// Each generator stage draws from its own stream so that, e.g., label
// padding does not shift the structure of the network it is applied to.
enum class Stream : std::uint32_t {
  kBiasedAttributes = 1,
  kBiasedStructure = 2,
  kLabels = 3,
  kTernary = 4,
};

std::mt19937_64 make_rng(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

// Visits pairs i < j in row-major order and adds each edge with probability
// prob(i, j). One uniform draw per pair keeps the stream layout fixed.
template <typename ProbFn>
Matrix sample_edges(int n, std::mt19937_64& rng, ProbFn prob) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix adjacency = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unif(rng) < prob(i, j)) {
        adjacency(i, j) = 1.0;
        adjacency(j, i) = 1.0;
      }
    }
  }
  return adjacency;
}

// Indices sorted by score descending, ties by index.
std::vector<int> rank_descending(const Vector& score) {
  std::vector<int> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return score(a) > score(b); });
  return order;
}

std::vector<int> top_half_labels(const Vector& score) {
  const auto order = rank_descending(score);
  std::vector<int> labels(score.size(), 0);
  const std::size_t positives = order.size() / 2;
  for (std::size_t k = 0; k < positives; ++k) labels[order[k]] = 1;
  return labels;
}

std::vector<int> halves(int n) {
  std::vector<int> sensitive(n, 0);
  for (int i = n / 2; i < n; ++i) sensitive[i] = 1;
  return sensitive;
}

}  // namespace

void validate(const SynthConfig& cfg) {
  if (cfg.n_nodes <= 0 || cfg.n_nodes % 2 != 0) {
    throw DomainError("n_nodes must be a positive even number");
  }
  if (cfg.n_nodes > kMaxNodes) {
    throw DomainError("n_nodes exceeds the dense cap of " +
                      std::to_string(kMaxNodes));
  }
  const int t = cfg.community_size();
  if (t < 0 || 2 * t > cfg.n_nodes) {
    throw DomainError("community size t must satisfy 0 <= 2t <= n_nodes");
  }
  if (t > cfg.n_nodes / 2) {
    throw DomainError("community size t exceeds the group size");
  }
  if (cfg.extra_dims < 0) throw DomainError("extra_dims must be nonnegative");
  if (!(cfg.noise_sigma >= 0.0)) {
    throw DomainError("noise_sigma must be nonnegative");
  }
}

AttributedNetwork gen_case_biased_attributes(const SynthConfig& cfg) {
  validate(cfg);
  const int n = cfg.n_nodes;
  auto rng = make_rng(cfg.seed, Stream::kBiasedAttributes);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<int> sensitive = halves(n);
  Matrix x(n, 2);
  for (int i = 0; i < n; ++i) {
    const double shift = sensitive[i] == 0 ? -1.5 : 1.5;
    for (int m = 0; m < 2; ++m) x(i, m) = shift + normal(rng);
  }
  Matrix adjacency =
      sample_edges(n, rng, [](int, int) { return kUnbiasedEdgeProb; });
  return AttributedNetwork(std::move(adjacency), std::move(x),
                           std::move(sensitive));
}

std::vector<int> biased_structure_communities(const Matrix& attributes,
                                              const std::vector<int>& sensitive,
                                              int t) {
  const Vector sums = attributes.rowwise().sum();
  const auto order = rank_descending(sums);
  std::vector<int> community(sensitive.size(), 2);
  int top_ones = 0;
  for (int i : order) {
    if (top_ones == t) break;
    if (sensitive[i] == 1) {
      community[i] = 0;
      ++top_ones;
    }
  }
  int bottom_zeros = 0;
  for (auto it = order.rbegin(); it != order.rend() && bottom_zeros < t; ++it) {
    if (sensitive[*it] == 0) {
      community[*it] = 1;
      ++bottom_zeros;
    }
  }
  return community;
}

AttributedNetwork gen_case_biased_structure(const SynthConfig& cfg) {
  validate(cfg);
  const int n = cfg.n_nodes;
  auto rng = make_rng(cfg.seed, Stream::kBiasedStructure);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<int> sensitive = halves(n);
  Matrix x(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < 2; ++m) x(i, m) = normal(rng);
  }
  const auto community =
      biased_structure_communities(x, sensitive, cfg.community_size());
  Matrix adjacency = sample_edges(n, rng, [&](int i, int j) {
    const int a = community[i], b = community[j];
    if (a == b) return a == 2 ? kRestCommunityProb : kDenseCommunityProb;
    if (a == 2 || b == 2) return kCrossCommunityProb;
    return 0.0;
  });
  return AttributedNetwork(std::move(adjacency), std::move(x),
                           std::move(sensitive));
}

AttributedNetwork attach_labels_and_padding(const AttributedNetwork& net,
                                            const SynthConfig& cfg) {
  if (cfg.extra_dims < 2) {
    throw DomainError("labels need at least two extra dimensions");
  }
  const int n = net.num_nodes();
  const int base = net.num_attributes();
  auto rng = make_rng(cfg.seed, Stream::kLabels);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix x(n, base + cfg.extra_dims);
  x.leftCols(base) = net.attributes();
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < cfg.extra_dims; ++m) x(i, base + m) = unif(rng);
  }
  Vector score = x.col(base) + x.col(base + 1);
  for (int i = 0; i < n; ++i) score(i) += cfg.noise_sigma * normal(rng);
  return net.with_attributes(std::move(x)).with_labels(top_half_labels(score));
}

AttributedNetwork gen_ternary(const SynthConfig& cfg) {
  const int n = cfg.n_nodes;
  if (n <= 0 || n % 3 != 0) {
    throw DomainError("ternary generator needs n_nodes divisible by 3 (got " +
                      std::to_string(n) + ")");
  }
  if (n > kMaxNodes) throw DomainError("n_nodes exceeds the dense cap");
  if (cfg.extra_dims < 2) {
    throw DomainError("ternary labels need at least two unbiased dimensions");
  }
  auto rng = make_rng(cfg.seed, Stream::kTernary);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int third = n / 3;
  std::vector<int> sensitive(n);
  for (int i = 0; i < n; ++i) sensitive[i] = i / third;

  const int dims = 2 + cfg.extra_dims;
  Matrix x(n, dims);
  for (int i = 0; i < n; ++i) {
    const double shift = static_cast<double>(sensitive[i]) - 1.0;
    for (int m = 0; m < dims; ++m) {
      x(i, m) = (m < 2 ? shift : 0.0) + normal(rng);
    }
  }
  Matrix adjacency = sample_edges(n, rng, [&](int i, int j) {
    return sensitive[i] == sensitive[j] ? kDenseCommunityProb
                                        : kCrossCommunityProb;
  });
  Vector score = x.col(2) + x.col(3);
  for (int i = 0; i < n; ++i) score(i) += cfg.noise_sigma * normal(rng);
  return AttributedNetwork(std::move(adjacency), std::move(x),
                           std::move(sensitive), top_half_labels(score));
}

Matrix one_step_propagation_demo(const AttributedNetwork& net) {
  if (net.num_attributes() < 1) {
    throw DomainError("propagation demo needs at least one attribute column");
  }
  return self_loop_normalize(net.adjacency()) * net.attributes();
}

}  // namespace fairgraph::synth
