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

#ifndef FAIRGRAPH_FAIRNESS_H_
#define FAIRGRAPH_FAIRNESS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairgraph/gcn.h"
#include "fairgraph/network.h"

namespace fairgraph {

inline constexpr double kDecisionThreshold = 0.5;

// Label-stratified split: within each class, a seeded shuffle assigns
// floor(train_frac * k) nodes to train, floor(val_frac * k) to val and the
// rest to test. Index lists are returned sorted.
Splits stratified_splits(std::span<const int> labels, std::uint64_t seed,
                         double train_frac = 0.5, double val_frac = 0.25);

// Mann-Whitney AUC over the nodes in `subset`; ties count one half. Throws
// DomainError if the subset holds a single class.
double auc_score(std::span<const double> scores, std::span<const int> labels,
                 std::span<const int> subset);

// F1 of the positive class with predictions scores >= threshold. Zero when
// there are no true positives.
double f1_score(std::span<const double> scores, std::span<const int> labels,
                std::span<const int> subset,
                double threshold = kDecisionThreshold);

struct Utility {
  double auc = 0.0;
  double f1 = 0.0;
};

Utility evaluate_utility(std::span<const double> scores,
                         std::span<const int> labels,
                         std::span<const int> test);
Utility evaluate_utility(const GcnModel& model, const AttributedNetwork& net,
                         std::span<const int> test);

// Symmetric table of pair gaps; entry (g, h) is nullopt when a conditioning
// set is empty. The diagonal is zero.
using PairTable = std::vector<std::vector<std::optional<double>>>;

struct GroupGaps {
  int num_groups = 0;
  PairTable delta_sp;
  PairTable delta_eo;
  // Gap of groups 0 and 1 when G = 2; mean over defined pairs otherwise.
  std::optional<double> sp;
  std::optional<double> eo;
};

// Statistical parity and equal opportunity gaps of hard predictions over
// the nodes in `test`.
GroupGaps evaluate_fairness(std::span<const int> predictions,
                            std::span<const int> labels,
                            std::span<const int> sensitive,
                            std::span<const int> test);

struct FairnessReport {
  double auc = 0.0;
  double f1 = 0.0;
  GroupGaps gaps;
};

// Any backbone that maps a network to a positive-class score per node.
using NodeScorer = std::function<Vector(const AttributedNetwork&)>;

FairnessReport evaluate_scorer(const NodeScorer& scorer,
                               const AttributedNetwork& net,
                               std::span<const int> test);

enum class InputScaling {
  kNone,
  kMinMax,       // per-column [0,1] frame
  kStandardize,  // per-column zero mean, unit variance; constant columns -> 0
};

std::string to_string(InputScaling scaling);
InputScaling input_scaling_from_string(const std::string& name);

Matrix standardize_columns(const Matrix& x);

struct EvalOptions {
  GcnHyper hyper;
  // Used when the network carries no splits.
  std::uint64_t split_seed = 0;
  InputScaling scaling = InputScaling::kStandardize;
};

struct EvalOutcome {
  FairnessReport report;
  Splits splits;
  Vector scores;
  std::vector<double> loss_history;
};

// Trains a GCN on the train split (the network's own, or a stratified one)
// and reports utility and fairness on the test split. Throws DomainError
// when labels are missing.
EvalOutcome evaluate_gcn(const AttributedNetwork& net, const EvalOptions& opts);

}  // namespace fairgraph

#endif  // FAIRGRAPH_FAIRNESS_H_
