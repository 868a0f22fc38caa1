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

#include "fairgraph/fairness.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fairgraph/bias.h"

namespace fairgraph {
namespace {

void check_subset(std::span<const int> subset, std::size_t n) {
  for (int i : subset) {
    if (i < 0 || static_cast<std::size_t>(i) >= n) {
      throw DomainError("subset index out of range");
    }
  }
}

}  // namespace

std::string to_string(InputScaling scaling) {
  switch (scaling) {
    case InputScaling::kNone:
      return "none";
    case InputScaling::kMinMax:
      return "minmax";
    case InputScaling::kStandardize:
      return "standardize";
  }
  return "unknown";
}

InputScaling input_scaling_from_string(const std::string& name) {
  if (name == "none") return InputScaling::kNone;
  if (name == "minmax") return InputScaling::kMinMax;
  if (name == "standardize") return InputScaling::kStandardize;
  throw DomainError("unknown input scaling '" + name +
                    "' (none|minmax|standardize)");
}

Matrix standardize_columns(const Matrix& x) {
  Matrix out(x.rows(), x.cols());
  if (x.rows() == 0) return out;
  for (Eigen::Index m = 0; m < x.cols(); ++m) {
    const double mean = x.col(m).mean();
    const Vector centered = x.col(m).array() - mean;
    const double sd = std::sqrt(centered.squaredNorm() / x.rows());
    if (sd > 0.0) {
      out.col(m) = centered / sd;
    } else {
      out.col(m).setZero();
    }
  }
  return out;
}

Splits stratified_splits(std::span<const int> labels, std::uint64_t seed,
                         double train_frac, double val_frac) {
  if (!(train_frac > 0.0) || !(val_frac >= 0.0) ||
      !(train_frac + val_frac < 1.0)) {
    throw DomainError("split fractions must be positive and sum below 1");
  }
  std::vector<std::vector<int>> by_class(2);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw DomainError("labels must be binary");
    }
    by_class[labels[i]].push_back(static_cast<int>(i));
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), 0x5u};
  std::mt19937_64 rng(seq);
  Splits splits;
  for (auto& members : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    const auto k = members.size();
    const auto n_train = static_cast<std::size_t>(std::floor(train_frac * k));
    const auto n_val = static_cast<std::size_t>(std::floor(val_frac * k));
    auto it = members.begin();
    splits.train.insert(splits.train.end(), it, it + n_train);
    splits.val.insert(splits.val.end(), it + n_train, it + n_train + n_val);
    splits.test.insert(splits.test.end(), it + n_train + n_val, members.end());
  }
  std::sort(splits.train.begin(), splits.train.end());
  std::sort(splits.val.begin(), splits.val.end());
  std::sort(splits.test.begin(), splits.test.end());
  return splits;
}

double auc_score(std::span<const double> scores, std::span<const int> labels,
                 std::span<const int> subset) {
  if (scores.size() != labels.size()) {
    throw DomainError("scores and labels differ in length");
  }
  check_subset(subset, scores.size());
  std::vector<int> order(subset.begin(), subset.end());
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return scores[a] < scores[b]; });
  // Midranks give ties half credit.
  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t k = 0; k < order.size();) {
    std::size_t end = k;
    while (end < order.size() && scores[order[end]] == scores[order[k]]) ++end;
    const double midrank = 0.5 * static_cast<double>(k + 1 + end);
    for (std::size_t r = k; r < end; ++r) {
      if (labels[order[r]] == 1) {
        positive_rank_sum += midrank;
        ++positives;
      }
    }
    k = end;
  }
  const std::size_t negatives = order.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw DomainError("AUC is undefined: the evaluated nodes hold one class");
  }
  const double np = static_cast<double>(positives);
  return (positive_rank_sum - np * (np + 1.0) / 2.0) /
         (np * static_cast<double>(negatives));
}

double f1_score(std::span<const double> scores, std::span<const int> labels,
                std::span<const int> subset, double threshold) {
  check_subset(subset, scores.size());
  double tp = 0.0, fp = 0.0, fn = 0.0;
  for (int i : subset) {
    const bool predicted = scores[i] >= threshold;
    const bool actual = labels[i] == 1;
    tp += predicted && actual;
    fp += predicted && !actual;
    fn += !predicted && actual;
  }
  if (tp == 0.0) return 0.0;
  return 2.0 * tp / (2.0 * tp + fp + fn);
}

Utility evaluate_utility(std::span<const double> scores,
                         std::span<const int> labels,
                         std::span<const int> test) {
  return Utility{auc_score(scores, labels, test),
                 f1_score(scores, labels, test)};
}

Utility evaluate_utility(const GcnModel& model, const AttributedNetwork& net,
                         std::span<const int> test) {
  if (!net.labels()) throw DomainError("utility needs node labels");
  const Vector scores = positive_scores(model, net);
  return evaluate_utility({scores.data(), static_cast<std::size_t>(scores.size())},
                          *net.labels(), test);
}

GroupGaps evaluate_fairness(std::span<const int> predictions,
                            std::span<const int> labels,
                            std::span<const int> sensitive,
                            std::span<const int> test) {
  if (predictions.size() != labels.size() ||
      predictions.size() != sensitive.size()) {
    throw DomainError("predictions, labels and groups differ in length");
  }
  check_subset(test, predictions.size());
  int groups = 0;
  for (int s : sensitive) {
    if (s < 0) throw DomainError("group ids must be nonnegative");
    groups = std::max(groups, s + 1);
  }
  if (groups < 2) throw DomainError("fairness needs at least two groups");

  // Per group: count, predicted positives, true positives count, hits.
  std::vector<double> count(groups), hit(groups), pos(groups), pos_hit(groups);
  for (int i : test) {
    const int g = sensitive[i];
    count[g] += 1.0;
    hit[g] += predictions[i] == 1;
    if (labels[i] == 1) {
      pos[g] += 1.0;
      pos_hit[g] += predictions[i] == 1;
    }
  }
  auto rate = [](double num, double den) -> std::optional<double> {
    if (den == 0.0) return std::nullopt;
    return num / den;
  };
  GroupGaps gaps;
  gaps.num_groups = groups;
  gaps.delta_sp.assign(groups, std::vector<std::optional<double>>(groups));
  gaps.delta_eo = gaps.delta_sp;
  double sp_total = 0.0, eo_total = 0.0;
  int sp_defined = 0, eo_defined = 0;
  for (int g = 0; g < groups; ++g) {
    gaps.delta_sp[g][g] = 0.0;
    gaps.delta_eo[g][g] = 0.0;
    for (int h = g + 1; h < groups; ++h) {
      const auto a = rate(hit[g], count[g]), b = rate(hit[h], count[h]);
      if (a && b) {
        const double gap = std::abs(*a - *b);
        gaps.delta_sp[g][h] = gaps.delta_sp[h][g] = gap;
        sp_total += gap;
        ++sp_defined;
      }
      const auto c = rate(pos_hit[g], pos[g]), d = rate(pos_hit[h], pos[h]);
      if (c && d) {
        const double gap = std::abs(*c - *d);
        gaps.delta_eo[g][h] = gaps.delta_eo[h][g] = gap;
        eo_total += gap;
        ++eo_defined;
      }
    }
  }
  if (groups == 2) {
    gaps.sp = gaps.delta_sp[0][1];
    gaps.eo = gaps.delta_eo[0][1];
  } else {
    if (sp_defined > 0) gaps.sp = sp_total / sp_defined;
    if (eo_defined > 0) gaps.eo = eo_total / eo_defined;
  }
  return gaps;
}

FairnessReport evaluate_scorer(const NodeScorer& scorer,
                               const AttributedNetwork& net,
                               std::span<const int> test) {
  if (!net.labels()) throw DomainError("evaluation needs node labels");
  const Vector scores = scorer(net);
  if (scores.size() != net.num_nodes()) {
    throw DomainError("scorer returned the wrong number of scores");
  }
  const std::span<const double> view(scores.data(),
                                     static_cast<std::size_t>(scores.size()));
  const Utility utility = evaluate_utility(view, *net.labels(), test);
  std::vector<int> predictions(scores.size());
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    predictions[i] = scores(i) >= kDecisionThreshold ? 1 : 0;
  }
  FairnessReport report;
  report.auc = utility.auc;
  report.f1 = utility.f1;
  report.gaps =
      evaluate_fairness(predictions, *net.labels(), net.sensitive(), test);
  return report;
}

EvalOutcome evaluate_gcn(const AttributedNetwork& net, const EvalOptions& opts) {
  if (!net.labels()) throw DomainError("evaluation needs node labels");
  EvalOutcome out;
  out.splits = net.splits() ? *net.splits()
                            : stratified_splits(*net.labels(), opts.split_seed);
  AttributedNetwork input = net;
  if (opts.scaling == InputScaling::kMinMax) {
    input = net.with_attributes(bias_frame(net), true);
  } else if (opts.scaling == InputScaling::kStandardize) {
    input = net.with_attributes(standardize_columns(net.attributes()));
  }
  TrainResult trained = train_gcn(input, out.splits.train, opts.hyper);
  out.loss_history = std::move(trained.loss_history);
  out.scores = positive_scores(trained.model, input);
  const Vector scores = out.scores;
  out.report = evaluate_scorer([&](const AttributedNetwork&) { return scores; },
                               net, out.splits.test);
  return out;
}

}  // namespace fairgraph
