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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "fairgraph/bias.h"
#include "fairgraph/debias.h"
#include "fairgraph/fairness.h"
#include "fairgraph/gcn.h"
#include "fairgraph/synth.h"
#include "fairgraph/wasserstein.h"

namespace fairgraph {
namespace {

AttributedNetwork labeled_case2(int n) {
  synth::SynthConfig cfg;
  cfg.n_nodes = n;
  return synth::attach_labels_and_padding(synth::gen_case_biased_structure(cfg), cfg);
}

void BM_Wasserstein1(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::vector<double> a(state.range(0)), b(state.range(0) + 7);
  for (double& v : a) v = normal(rng);
  for (double& v : b) v = normal(rng) + 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein1(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Wasserstein1)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void BM_PropagationMatrix(benchmark::State& state) {
  const auto net = labeled_case2(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto op = make_operator(net.adjacency(), BiasParams{});
    benchmark::DoNotOptimize(propagation_matrix(op).data());
  }
}
BENCHMARK(BM_PropagationMatrix)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_MeasureBias(benchmark::State& state) {
  const auto net = labeled_case2(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(measure_bias(net, BiasParams{}).b_stru);
}
BENCHMARK(BM_MeasureBias)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_DebiasEpoch(benchmark::State& state) {
  const auto net = labeled_case2(static_cast<int>(state.range(0)));
  debias::DebiasConfig cfg;
  const auto problem = debias::DebiasProblem::from_network(net, cfg.alpha, cfg.horizon);
  debias::DebiasState s = debias::initial_state(problem, cfg);
  for (auto _ : state) {
    const auto views = debias::build_joint_views(
        problem.x * s.theta.asDiagonal(), s.a_tilde, problem.alpha, problem.horizon,
        problem.groups);
    debias::critic_update(s, views, cfg);
    debias::theta_step(s, problem, cfg, cfg.lr_early);
    debias::adjacency_step(s, problem, cfg, cfg.lr_early);
  }
}
BENCHMARK(BM_DebiasEpoch)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GcnTraining(benchmark::State& state) {
  const auto net = labeled_case2(1000);
  const auto splits = stratified_splits(*net.labels(), 0);
  GcnHyper hyper;
  hyper.epochs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(train_gcn(net, splits.train, hyper).loss_history.back());
  }
  state.SetItemsProcessed(state.iterations() * hyper.epochs);
}
BENCHMARK(BM_GcnTraining)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace fairgraph

BENCHMARK_MAIN();
