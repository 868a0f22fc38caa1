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

#include "fairgraph/debias.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fairgraph/bias.h"

namespace fairgraph::debias {

std::string to_string(StepRule rule) {
  switch (rule) {
    case StepRule::kRmsProp:
      return "rmsprop";
    case StepRule::kPlain:
      return "plain";
  }
  return "unknown";
}

StepRule step_rule_from_string(const std::string& name) {
  if (name == "rmsprop") return StepRule::kRmsProp;
  if (name == "plain") return StepRule::kPlain;
  throw DomainError("unknown step rule '" + name + "' (rmsprop|plain)");
}

int DebiasConfig::resolved_mask_z(int num_attributes) const {
  if (mask_z) return *mask_z;
  return static_cast<int>(std::ceil(0.1 * num_attributes));
}

void validate(const DebiasConfig& cfg, int num_attributes) {
  if (cfg.epochs < 0) throw DomainError("epochs must be nonnegative");
  if (!(cfg.lr_early > 0.0) || !(cfg.lr_late > 0.0) ||
      !(cfg.critic_lr > 0.0)) {
    throw DomainError("learning rates must be positive");
  }
  for (double mu : {cfg.mu1, cfg.mu2, cfg.mu3, cfg.mu4}) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
      throw DomainError("mu1..mu4 must be nonnegative");
    }
  }
  if (!(cfg.clip_c > 0.0)) throw DomainError("clip_c must be positive");
  const int z = cfg.resolved_mask_z(num_attributes);
  if (z < 0 || z >= num_attributes) {
    throw DomainError("mask_z must satisfy 0 <= z < M (z=" + std::to_string(z) +
                      ", M=" + std::to_string(num_attributes) + ")");
  }
  if (!(cfg.binarize_r > 0.0 && cfg.binarize_r < 1.0)) {
    throw DomainError("binarize_r must lie in (0,1)");
  }
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) {
    throw DomainError("alpha must lie in [0,1]");
  }
  if (cfg.horizon < 1) throw DomainError("horizon must be at least 1");
  if (cfg.critic_steps_per_epoch < 1) {
    throw DomainError("critic_steps_per_epoch must be at least 1");
  }
  if (!(cfg.rmsprop_decay >= 0.0 && cfg.rmsprop_decay < 1.0) ||
      !(cfg.rmsprop_eps > 0.0)) {
    throw DomainError("invalid RMSprop settings");
  }
}

double critic_value(const Critic& critic, const Vector& view) {
  if (critic.weights.size() != view.size()) {
    throw DomainError("critic and view lengths differ");
  }
  return critic.weights.dot(view) + critic.offset;
}

std::vector<std::vector<int>> group_index(const std::vector<int>& sensitive,
                                          int num_groups) {
  std::vector<std::vector<int>> groups(num_groups);
  for (int i = 0; i < static_cast<int>(sensitive.size()); ++i) {
    if (sensitive[i] < 0 || sensitive[i] >= num_groups) {
      throw DomainError("sensitive id out of range");
    }
    groups[sensitive[i]].push_back(i);
  }
  return groups;
}

Matrix JointViews::view(int m, int g) const {
  const auto& members = groups.at(g);
  Matrix out(members.size(), hops.size());
  for (std::size_t r = 0; r < members.size(); ++r) {
    for (std::size_t h = 0; h < hops.size(); ++h) {
      out(r, h) = hops[h](members[r], m);
    }
  }
  return out;
}

std::vector<Matrix> JointViews::group_means() const {
  std::vector<Matrix> means;
  const int dims = num_dims();
  for (const auto& members : groups) {
    if (members.empty()) throw DomainError("a group has no members");
    Matrix mu(dims, hops.size());
    for (std::size_t h = 0; h < hops.size(); ++h) {
      for (int m = 0; m < dims; ++m) {
        double total = 0.0;
        for (int i : members) total += hops[h](i, m);
        mu(m, h) = total / static_cast<double>(members.size());
      }
    }
    means.push_back(std::move(mu));
  }
  return means;
}

Matrix propagation_step_matrix(const Matrix& a_tilde, double alpha) {
  if ((a_tilde.array() < 0.0).any()) {
    throw DomainError("continuous adjacency has a negative entry");
  }
  Matrix p = alpha * degree_normalize(a_tilde);
  p.diagonal().array() += 1.0 - alpha;
  return p;
}

namespace {

std::vector<Matrix> propagate(const Matrix& p, const Matrix& x0, int horizon) {
  std::vector<Matrix> hops;
  hops.reserve(horizon + 1);
  hops.push_back(x0);
  for (int h = 1; h <= horizon; ++h) hops.push_back(p * hops.back());
  return hops;
}

// Stacked critic weights, M x (H+1).
Matrix weight_matrix(const Critics& critics, int dims, int width) {
  if (static_cast<int>(critics.size()) != dims) {
    throw DomainError("need one critic per attribute dimension");
  }
  Matrix w(dims, width);
  for (int m = 0; m < dims; ++m) {
    if (critics[m].weights.size() != width) {
      throw DomainError("critic weight length must be horizon + 1");
    }
    w.row(m) = critics[m].weights.transpose();
  }
  return w;
}

// Per-dimension critic gaps d_m = w_m . (mu_i[m] - mu_j[m]).
Vector pair_gaps(const Matrix& w, const Matrix& mu_i, const Matrix& mu_j) {
  return (w.array() * (mu_i - mu_j).array()).rowwise().sum();
}

double loss_from_means(const std::vector<Matrix>& means, const Matrix& w) {
  const int groups = static_cast<int>(means.size());
  if (groups < 2) throw DomainError("need at least two groups");
  if (groups == 2) return pair_gaps(w, means[0], means[1]).sum();
  double total = 0.0;
  for (int i = 0; i < groups; ++i) {
    for (int j = i + 1; j < groups; ++j) {
      total += pair_gaps(w, means[i], means[j]).squaredNorm();
    }
  }
  return total;
}

// d loss / d mu_g for every group, each M x (H+1).
std::vector<Matrix> mean_gradients(const std::vector<Matrix>& means,
                                   const Matrix& w) {
  const int groups = static_cast<int>(means.size());
  std::vector<Matrix> grads(groups, Matrix::Zero(w.rows(), w.cols()));
  if (groups == 2) {
    grads[0] = w;
    grads[1] = -w;
    return grads;
  }
  for (int i = 0; i < groups; ++i) {
    for (int j = i + 1; j < groups; ++j) {
      const Vector d = pair_gaps(w, means[i], means[j]);
      const Matrix term = 2.0 * d.asDiagonal() * w;
      grads[i] += term;
      grads[j] -= term;
    }
  }
  return grads;
}

// Seeds d loss / d Z(h) from the group-mean gradients.
std::vector<Matrix> hop_seeds(const std::vector<Matrix>& mean_grads,
                              const std::vector<std::vector<int>>& groups,
                              int n, int dims, int width) {
  std::vector<Matrix> seeds(width, Matrix::Zero(n, dims));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double inv = 1.0 / static_cast<double>(groups[g].size());
    for (int h = 0; h < width; ++h) {
      const Vector col = mean_grads[g].col(h) * inv;
      for (int i : groups[g]) seeds[h].row(i) = col.transpose();
    }
  }
  return seeds;
}

Matrix scale_columns(const Matrix& x, const Vector& theta) {
  return x * theta.asDiagonal();
}

}  // namespace

JointViews build_joint_views(const Matrix& x_tilde, const Matrix& a_tilde,
                             double alpha, int horizon,
                             const std::vector<std::vector<int>>& groups) {
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  if (a_tilde.rows() != x_tilde.rows() || a_tilde.cols() != x_tilde.rows()) {
    throw DomainError("adjacency and attribute shapes do not match");
  }
  JointViews views;
  views.hops = propagate(propagation_step_matrix(a_tilde, alpha), x_tilde,
                         horizon);
  views.groups = groups;
  return views;
}

double loss_l1(const JointViews& views, const Critics& critics) {
  if (views.num_groups() != 2) {
    throw DomainError("loss_l1 needs exactly two groups");
  }
  const Matrix w =
      weight_matrix(critics, views.num_dims(), views.horizon() + 1);
  return loss_from_means(views.group_means(), w);
}

double loss_l1_multigroup(const JointViews& views, const Critics& critics) {
  const Matrix w =
      weight_matrix(critics, views.num_dims(), views.horizon() + 1);
  const auto means = views.group_means();
  double total = 0.0;
  for (std::size_t i = 0; i < means.size(); ++i) {
    for (std::size_t j = i + 1; j < means.size(); ++j) {
      total += pair_gaps(w, means[i], means[j]).squaredNorm();
    }
  }
  return total;
}

double group_loss(const JointViews& views, const Critics& critics) {
  return views.num_groups() == 2 ? loss_l1(views, critics)
                                 : loss_l1_multigroup(views, critics);
}

std::vector<Vector> critic_gradient(const JointViews& views,
                                    const Critics& critics) {
  const int dims = views.num_dims();
  const Matrix w = weight_matrix(critics, dims, views.horizon() + 1);
  const auto means = views.group_means();
  Matrix grad = Matrix::Zero(w.rows(), w.cols());
  if (means.size() == 2) {
    grad = means[0] - means[1];
  } else {
    for (std::size_t i = 0; i < means.size(); ++i) {
      for (std::size_t j = i + 1; j < means.size(); ++j) {
        const Vector d = pair_gaps(w, means[i], means[j]);
        grad += 2.0 * d.asDiagonal() * (means[i] - means[j]);
      }
    }
  }
  std::vector<Vector> out(dims);
  for (int m = 0; m < dims; ++m) out[m] = grad.row(m).transpose();
  return out;
}

Critics critic_step(const Critics& critics, const JointViews& views, double lr,
                    double c) {
  const auto grad = critic_gradient(views, critics);
  Critics next = critics;
  for (std::size_t m = 0; m < next.size(); ++m) {
    next[m].weights = (next[m].weights + lr * grad[m]).cwiseMax(-c).cwiseMin(c);
    next[m].offset = std::clamp(next[m].offset, -c, c);
  }
  return next;
}

DebiasProblem DebiasProblem::from_network(const AttributedNetwork& net,
                                          double alpha, int horizon) {
  DebiasProblem p;
  p.x = bias_frame(net);
  p.a = net.adjacency();
  p.groups = group_index(net.sensitive(), net.num_groups());
  p.alpha = alpha;
  p.horizon = horizon;
  return p;
}

LossGradients loss_gradients(const DebiasProblem& problem, const Vector& theta,
                             const Matrix& a_tilde, const Critics& critics,
                             bool want_adjacency) {
  const int n = problem.num_nodes();
  const int dims = problem.num_dims();
  const int width = problem.horizon + 1;
  if (theta.size() != dims) throw DomainError("theta length must equal M");

  const Matrix p = propagation_step_matrix(a_tilde, problem.alpha);
  const auto hops = propagate(p, scale_columns(problem.x, theta),
                              problem.horizon);
  JointViews views{hops, problem.groups};
  const auto means = views.group_means();
  const Matrix w = weight_matrix(critics, dims, width);

  LossGradients out;
  out.loss = loss_from_means(means, w);
  const auto seeds =
      hop_seeds(mean_gradients(means, w), problem.groups, n, dims, width);

  // Reverse sweep over Z(h) = P Z(h-1).
  Matrix adjoint = seeds[problem.horizon];
  Matrix d_p;
  if (want_adjacency) d_p = Matrix::Zero(n, n);
  for (int h = problem.horizon; h >= 1; --h) {
    if (want_adjacency) d_p.noalias() += adjoint * hops[h - 1].transpose();
    Matrix next = seeds[h - 1];
    next.noalias() += p.transpose() * adjoint;
    adjoint = std::move(next);
  }
  out.d_theta = (problem.x.array() * adjoint.array()).colwise().sum().transpose();

  if (want_adjacency) {
    // A_norm = diag(s) A~ diag(s) with s_i = d_i^{-1/2}, d_i = sum_j A~_ij.
    const Vector degree = a_tilde.rowwise().sum();
    Vector s(n);
    for (int i = 0; i < n; ++i) {
      s(i) = degree(i) > 0.0 ? 1.0 / std::sqrt(degree(i)) : 0.0;
    }
    const Matrix b = problem.alpha * d_p;
    const Matrix weighted = b.cwiseProduct(a_tilde);
    const Vector d_s = weighted * s + weighted.transpose() * s;
    const Vector d_degree =
        (-0.5 * d_s.array() * s.array().cube()).matrix();
    out.d_adjacency = s.asDiagonal() * b * s.asDiagonal();
    out.d_adjacency.colwise() += d_degree;
  }
  return out;
}

double theta_objective(const DebiasProblem& problem, const Vector& theta,
                       const Matrix& a_tilde, const Critics& critics,
                       double mu1) {
  const JointViews views =
      build_joint_views(scale_columns(problem.x, theta), a_tilde,
                        problem.alpha, problem.horizon, problem.groups);
  const double fit = (scale_columns(problem.x, theta) - problem.x).squaredNorm();
  return group_loss(views, critics) + mu1 * fit;
}

Vector theta_objective_gradient(const DebiasProblem& problem,
                                const Vector& theta, const Matrix& a_tilde,
                                const Critics& critics, double mu1) {
  Vector grad =
      loss_gradients(problem, theta, a_tilde, critics, false).d_theta;
  const Vector col_sq = problem.x.colwise().squaredNorm().transpose();
  grad += 2.0 * mu1 * ((theta.array() - 1.0) * col_sq.array()).matrix();
  return grad;
}

double adjacency_objective(const DebiasProblem& problem, const Vector& theta,
                           const Matrix& a_tilde, const Critics& critics,
                           double mu3) {
  const JointViews views =
      build_joint_views(scale_columns(problem.x, theta), a_tilde,
                        problem.alpha, problem.horizon, problem.groups);
  return group_loss(views, critics) + mu3 * (a_tilde - problem.a).squaredNorm();
}

Matrix adjacency_objective_gradient(const DebiasProblem& problem,
                                    const Vector& theta, const Matrix& a_tilde,
                                    const Critics& critics, double mu3) {
  Matrix grad =
      loss_gradients(problem, theta, a_tilde, critics, true).d_adjacency;
  grad += 2.0 * mu3 * (a_tilde - problem.a);
  return grad;
}

namespace {

void apply_step(Eigen::Ref<Matrix> param, const Matrix& grad, StepRule rule,
                RmsPropState& rms, const DebiasConfig& cfg, double lr) {
  if (rule == StepRule::kPlain) {
    param -= lr * grad;
    return;
  }
  if (rms.square_avg.rows() != grad.rows() ||
      rms.square_avg.cols() != grad.cols()) {
    rms.square_avg = Eigen::ArrayXXd::Zero(grad.rows(), grad.cols());
  }
  rms.square_avg = cfg.rmsprop_decay * rms.square_avg +
                   (1.0 - cfg.rmsprop_decay) * grad.array().square();
  param.array() -=
      lr * grad.array() / (rms.square_avg.sqrt() + cfg.rmsprop_eps);
}

template <typename Derived>
void soft_threshold_clip(Eigen::DenseBase<Derived>& values, double tau) {
  values = values.unaryExpr([tau](double v) {
    const double shrunk =
        std::copysign(std::max(std::abs(v) - tau, 0.0), v);
    return std::clamp(shrunk, 0.0, 1.0);
  });
}

}  // namespace

DebiasState initial_state(const DebiasProblem& problem,
                          const DebiasConfig& cfg) {
  DebiasState state;
  state.theta = Vector::Ones(problem.num_dims());
  state.a_tilde = problem.a;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(-cfg.clip_c, cfg.clip_c);
  state.critics.resize(problem.num_dims());
  for (auto& critic : state.critics) {
    critic.weights.resize(problem.horizon + 1);
    for (Eigen::Index h = 0; h < critic.weights.size(); ++h) {
      critic.weights(h) = unif(rng);
    }
    critic.offset = unif(rng);
  }
  return state;
}

void critic_update(DebiasState& state, const JointViews& views,
                   const DebiasConfig& cfg) {
  if (cfg.critic_rule == StepRule::kPlain) {
    state.critics = critic_step(state.critics, views, cfg.critic_lr, cfg.clip_c);
    return;
  }
  const auto grad = critic_gradient(views, state.critics);
  const int dims = static_cast<int>(grad.size());
  const int width = views.horizon() + 1;
  Matrix w = weight_matrix(state.critics, dims, width);
  Matrix g(dims, width);
  for (int m = 0; m < dims; ++m) g.row(m) = -grad[m].transpose();
  apply_step(w, g, StepRule::kRmsProp, state.critic_rms, cfg, cfg.critic_lr);
  w = w.cwiseMax(-cfg.clip_c).cwiseMin(cfg.clip_c);
  for (int m = 0; m < dims; ++m) {
    state.critics[m].weights = w.row(m).transpose();
    state.critics[m].offset =
        std::clamp(state.critics[m].offset, -cfg.clip_c, cfg.clip_c);
  }
}

void theta_step(DebiasState& state, const DebiasProblem& problem,
                const DebiasConfig& cfg, double lr) {
  const Vector grad = theta_objective_gradient(problem, state.theta,
                                               state.a_tilde, state.critics,
                                               cfg.mu1);
  if (!grad.allFinite()) throw DomainError("non-finite attribute gradient");
  Matrix theta = state.theta;
  apply_step(theta, grad, cfg.theta_rule, state.theta_rms, cfg, lr);
  soft_threshold_clip(theta, lr * cfg.mu2);
  state.theta = theta.col(0);
}

void adjacency_step(DebiasState& state, const DebiasProblem& problem,
                    const DebiasConfig& cfg, double lr) {
  Matrix grad = adjacency_objective_gradient(problem, state.theta,
                                             state.a_tilde, state.critics,
                                             cfg.mu3);
  if (!grad.allFinite()) throw DomainError("non-finite adjacency gradient");
  // Gradient along symmetric perturbations, so A~ stays symmetric.
  grad = 0.5 * (grad + grad.transpose()).eval();
  apply_step(state.a_tilde, grad, cfg.adjacency_rule, state.adjacency_rms, cfg,
             lr);
  soft_threshold_clip(state.a_tilde, lr * cfg.mu4);
  state.a_tilde.diagonal().setZero();
  state.a_tilde = 0.5 * (state.a_tilde + state.a_tilde.transpose()).eval();
}

Vector mask_smallest(const Vector& theta, int z) {
  if (z < 0 || z >= theta.size()) {
    throw DomainError("mask size must satisfy 0 <= z < M");
  }
  std::vector<int> order(theta.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return theta(a) < theta(b); });
  Vector out = theta;
  for (int k = 0; k < z; ++k) out(order[k]) = 0.0;
  return out;
}

Matrix binarize(const Matrix& a_tilde, const Matrix& a_original, double r) {
  if (a_tilde.rows() != a_original.rows() ||
      a_tilde.cols() != a_original.cols()) {
    throw DomainError("binarize needs matrices of equal shape");
  }
  const Matrix delta = a_tilde - a_original;
  const double add_threshold = r * delta.maxCoeff();
  const double drop_threshold = r * std::abs(delta.minCoeff());
  const Eigen::Index n = a_tilde.rows();
  Matrix out = a_original;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool flip = a_original(i, j) == 0.0
                            ? delta(i, j) > add_threshold
                            : -delta(i, j) > drop_threshold;
      if (flip) {
        const double value = a_original(i, j) == 0.0 ? 1.0 : 0.0;
        out(i, j) = value;
        out(j, i) = value;
      }
    }
  }
  out.diagonal().setZero();
  return out;
}

DebiasResult run_debias(const AttributedNetwork& net, const DebiasConfig& cfg,
                        const EpochObserver& observer) {
  validate(cfg, net.num_attributes());
  const DebiasProblem problem =
      DebiasProblem::from_network(net, cfg.alpha, cfg.horizon);
  DebiasState state = initial_state(problem, cfg);

  std::vector<double> trace;
  trace.reserve(cfg.epochs);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double lr = cfg.lr_at(epoch);
    const JointViews views =
        build_joint_views(scale_columns(problem.x, state.theta), state.a_tilde,
                          problem.alpha, problem.horizon, problem.groups);
    trace.push_back(group_loss(views, state.critics));
    for (int k = 0; k < cfg.critic_steps_per_epoch; ++k) {
      critic_update(state, views, cfg);
    }
    theta_step(state, problem, cfg, lr);
    adjacency_step(state, problem, cfg, lr);
    if (observer) observer(epoch, state);
  }

  const int z = cfg.resolved_mask_z(problem.num_dims());
  const Vector theta = mask_smallest(state.theta, z);
  std::vector<int> masked;
  for (Eigen::Index m = 0; m < theta.size(); ++m) {
    if (theta(m) == 0.0 && state.theta(m) != 0.0) masked.push_back(m);
  }
  // Entries already at zero count toward the mask too.
  if (static_cast<int>(masked.size()) < z) {
    masked.clear();
    std::vector<int> order(theta.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return state.theta(a) < state.theta(b);
    });
    masked.assign(order.begin(), order.begin() + z);
    std::sort(masked.begin(), masked.end());
  }

  Matrix x_tilde = scale_columns(problem.x, theta);
  Matrix a_binary = binarize(state.a_tilde, problem.a, cfg.binarize_r);
  AttributedNetwork out_net =
      net.with_adjacency(a_binary).with_attributes(x_tilde, true);
  if (!net.attribute_names().empty()) {
    out_net = out_net.with_attribute_names(net.attribute_names());
  }
  return DebiasResult{std::move(x_tilde),
                      std::move(a_binary),
                      state.a_tilde,
                      theta,
                      std::move(masked),
                      std::move(trace),
                      std::move(out_net)};
}

}  // namespace fairgraph::debias
