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

#include "fairgraph/gcn.h"

#include <cmath>
#include <random>
#include <string>

namespace fairgraph {
namespace {

constexpr std::uint32_t kInitStream = 0x11;
constexpr std::uint32_t kDropoutStream = 0x22;

std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream,
                         std::uint64_t step = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), stream,
                    static_cast<std::uint32_t>(step),
                    static_cast<std::uint32_t>(step >> 32)};
  return std::mt19937_64(seq);
}

void row_softmax(Matrix& logits) {
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double top = logits.row(i).maxCoeff();
    logits.row(i) = (logits.row(i).array() - top).exp();
    logits.row(i) /= logits.row(i).sum();
  }
}

// Scaled keep mask for inverted dropout.
Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate,
                    std::uint64_t seed, std::uint64_t step) {
  auto rng = make_rng(seed, kDropoutStream, step);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix mask(rows, cols);
  const double keep = 1.0 / (1.0 - rate);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      mask(i, j) = unif(rng) < rate ? 0.0 : keep;
    }
  }
  return mask;
}

struct Activations {
  Matrix px;      // P X
  Matrix pre;     // P X W1 + b1
  Matrix hidden;  // relu(pre) after dropout
  Matrix mask;    // empty outside training
  Matrix probs;
};

Activations forward_pass(const GcnModel& model, const SparseMatrix& p,
                         const Matrix& x, const Matrix* px_cache, bool training,
                         double dropout, std::uint64_t step) {
  if (x.cols() != model.num_inputs()) {
    throw DomainError("attribute width " + std::to_string(x.cols()) +
                      " does not match the model input width " +
                      std::to_string(model.num_inputs()));
  }
  if (p.rows() != x.rows() || p.cols() != x.rows()) {
    throw DomainError("propagation matrix does not match the node count");
  }
  Activations act;
  act.px = px_cache ? *px_cache : Matrix(p * x);
  act.pre = act.px * model.w1;
  act.pre.rowwise() += model.b1.transpose();
  act.hidden = act.pre.cwiseMax(0.0);
  if (training && dropout > 0.0) {
    act.mask = dropout_mask(act.hidden.rows(), act.hidden.cols(), dropout,
                            model.seed, step);
    act.hidden = act.hidden.cwiseProduct(act.mask);
  }
  act.probs = p * (act.hidden * model.w2);
  act.probs.rowwise() += model.b2.transpose();
  row_softmax(act.probs);
  return act;
}

struct AdamSlot {
  Matrix m, v;
  explicit AdamSlot(const Matrix& like)
      : m(Matrix::Zero(like.rows(), like.cols())),
        v(Matrix::Zero(like.rows(), like.cols())) {}
  void step(Matrix& param, const Matrix& grad, double lr, int t) {
    constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
    m = kBeta1 * m + (1.0 - kBeta1) * grad;
    v = kBeta2 * v + (1.0 - kBeta2) * grad.cwiseAbs2();
    const double c1 = 1.0 - std::pow(kBeta1, t);
    const double c2 = 1.0 - std::pow(kBeta2, t);
    param.array() -=
        lr * (m.array() / c1) / ((v.array() / c2).sqrt() + kEps);
  }
};

}  // namespace

void validate(const GcnHyper& hyper) {
  if (hyper.hidden < 1) throw DomainError("hidden size must be positive");
  if (!(hyper.dropout >= 0.0 && hyper.dropout < 1.0)) {
    throw DomainError("dropout must lie in [0,1)");
  }
  if (!(hyper.lr > 0.0)) throw DomainError("learning rate must be positive");
  if (hyper.epochs < 0) throw DomainError("epochs must be nonnegative");
  if (!(hyper.weight_decay >= 0.0)) {
    throw DomainError("weight decay must be nonnegative");
  }
}

GcnModel init_gcn(int num_inputs, int hidden, int num_classes,
                  std::uint64_t seed) {
  if (num_inputs < 1 || hidden < 1 || num_classes < 2) {
    throw DomainError("invalid GCN shape");
  }
  auto rng = make_rng(seed, kInitStream);
  auto glorot = [&rng](int rows, int cols) {
    const double bound = std::sqrt(6.0 / (rows + cols));
    std::uniform_real_distribution<double> unif(-bound, bound);
    Matrix w(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) w(i, j) = unif(rng);
    }
    return w;
  };
  GcnModel model;
  model.w1 = glorot(num_inputs, hidden);
  model.w2 = glorot(hidden, num_classes);
  model.b1 = Vector::Zero(hidden);
  model.b2 = Vector::Zero(num_classes);
  model.seed = seed;
  return model;
}

SparseMatrix gcn_propagation(const Matrix& adjacency) {
  if (adjacency.rows() != adjacency.cols()) {
    throw DomainError("adjacency must be square");
  }
  const Eigen::Index n = adjacency.rows();
  Vector s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s(i) = 1.0 / std::sqrt(adjacency.row(i).sum() + 1.0);
  }
  std::vector<Eigen::Triplet<double>> entries;
  for (Eigen::Index i = 0; i < n; ++i) {
    entries.emplace_back(i, i, s(i) * s(i));
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && adjacency(i, j) != 0.0) {
        entries.emplace_back(i, j, s(i) * adjacency(i, j) * s(j));
      }
    }
  }
  SparseMatrix p(n, n);
  p.setFromTriplets(entries.begin(), entries.end());
  return p;
}

Matrix gcn_forward(const GcnModel& model, const SparseMatrix& propagation,
                   const Matrix& attributes, bool training, double dropout,
                   std::uint64_t dropout_step) {
  return forward_pass(model, propagation, attributes, nullptr, training,
                      dropout, dropout_step)
      .probs;
}

Matrix gcn_forward(const GcnModel& model, const AttributedNetwork& net,
                   bool training, double dropout, std::uint64_t dropout_step) {
  return gcn_forward(model, gcn_propagation(net.adjacency()), net.attributes(),
                     training, dropout, dropout_step);
}

TrainResult train_gcn(const AttributedNetwork& net,
                      const std::vector<int>& train, const GcnHyper& hyper) {
  validate(hyper);
  if (!net.labels()) throw DomainError("training needs node labels");
  if (train.empty()) throw DomainError("training split is empty");
  const auto& labels = *net.labels();
  for (int i : train) {
    if (i < 0 || i >= net.num_nodes()) {
      throw DomainError("training index out of range");
    }
  }

  constexpr int kClasses = 2;
  const SparseMatrix p = gcn_propagation(net.adjacency());
  const Matrix px = p * net.attributes();
  TrainResult result;
  result.model = init_gcn(net.num_attributes(), hyper.hidden, kClasses,
                          hyper.seed);
  GcnModel& model = result.model;
  result.loss_history.reserve(hyper.epochs);

  Matrix b1 = model.b1, b2 = model.b2;
  AdamSlot opt_w1(model.w1), opt_b1(b1), opt_w2(model.w2), opt_b2(b2);
  const double inv_train = 1.0 / static_cast<double>(train.size());

  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    const Activations act = forward_pass(model, p, net.attributes(), &px, true,
                                         hyper.dropout, epoch);
    Matrix d_logits = Matrix::Zero(net.num_nodes(), kClasses);
    double loss = 0.0;
    for (int i : train) {
      loss -= std::log(std::max(act.probs(i, labels[i]), 1e-300));
      d_logits.row(i) = act.probs.row(i) * inv_train;
      d_logits(i, labels[i]) -= inv_train;
    }
    result.loss_history.push_back(loss * inv_train);

    // logits = P (H W2) + b2, H = dropout(relu(P X W1 + b1)).
    const Matrix d_hw2 = p.transpose() * d_logits;
    Matrix d_w2 = act.hidden.transpose() * d_hw2 + hyper.weight_decay * model.w2;
    const Matrix d_b2 = d_logits.colwise().sum().transpose();
    Matrix d_pre = d_hw2 * model.w2.transpose();
    if (act.mask.size() > 0) d_pre = d_pre.cwiseProduct(act.mask);
    d_pre = (act.pre.array() > 0.0).select(d_pre, 0.0);
    Matrix d_w1 = px.transpose() * d_pre + hyper.weight_decay * model.w1;
    const Matrix d_b1 = d_pre.colwise().sum().transpose();

    const int t = epoch + 1;
    opt_w1.step(model.w1, d_w1, hyper.lr, t);
    opt_w2.step(model.w2, d_w2, hyper.lr, t);
    opt_b1.step(b1, d_b1, hyper.lr, t);
    opt_b2.step(b2, d_b2, hyper.lr, t);
    model.b1 = b1.col(0);
    model.b2 = b2.col(0);
  }
  return result;
}

Vector positive_scores(const GcnModel& model, const AttributedNetwork& net) {
  if (model.num_classes() != 2) {
    throw DomainError("positive scores need a binary classifier");
  }
  return gcn_forward(model, net).col(1);
}

}  // namespace fairgraph
