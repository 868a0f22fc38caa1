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

// Alternating Wasserstein-minimization debiaser for attributed networks.
//
// For every attribute dimension m and group s the debiaser looks at the
// (H+1)-dimensional "joint view" of a node: its reweighted attribute and the
// same attribute after 1..H propagation hops over the continuous adjacency
//
//   Z(0) = X diag(theta),   Z(h) = P~ Z(h-1),
//   P~   = alpha D~^{-1/2} A~ D~^{-1/2} + (1 - alpha) I.
//
// An affine critic f_m with weights clipped to [-c, c] is trained by gradient
// ascent to separate the group means of these views, which estimates (a
// multiple of) the Wasserstein-1 distance between the group distributions.
// The attribute weights theta and the adjacency A~ are then moved by
// proximal gradient descent to shrink that estimate while staying close to
// the input.

#ifndef FAIRGRAPH_DEBIAS_H_
#define FAIRGRAPH_DEBIAS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fairgraph/network.h"

namespace fairgraph::debias {

enum class StepRule {
  kRmsProp,  // elementwise adaptive step
  kPlain,    // plain gradient step
};

std::string to_string(StepRule rule);
StepRule step_rule_from_string(const std::string& name);

struct DebiasConfig {
  int epochs = 500;
  // Step size for theta and A~: lr_early before lr_switch_epoch, then lr_late.
  double lr_early = 3e-3;
  double lr_late = 1e-3;
  int lr_switch_epoch = 400;
  double mu1 = 1e-3;  // attribute fit
  double mu2 = 1e-4;  // attribute sparsity
  double mu3 = 1e-1;  // structure fit
  double mu4 = 1e-4;  // structure sparsity
  double clip_c = 10.0;
  // Number of attribute weights zeroed after training; ceil(0.1 M) if unset.
  std::optional<int> mask_z;
  double binarize_r = 0.8;
  double alpha = 0.5;
  int horizon = 2;
  int critic_steps_per_epoch = 1;
  // Step size of the critic ascent steps.
  double critic_lr = 1.0;
  StepRule critic_rule = StepRule::kRmsProp;
  StepRule theta_rule = StepRule::kRmsProp;
  StepRule adjacency_rule = StepRule::kPlain;
  double rmsprop_decay = 0.99;
  double rmsprop_eps = 1e-8;
  std::uint64_t seed = 0;

  double lr_at(int epoch) const {
    return epoch < lr_switch_epoch ? lr_early : lr_late;
  }
  int resolved_mask_z(int num_attributes) const;
};

// Throws DomainError on out-of-range settings (including mask_z >= M).
void validate(const DebiasConfig& cfg, int num_attributes);

// Affine critic: weights of length H+1 plus an offset.
struct Critic {
  Vector weights;
  double offset = 0.0;
};
using Critics = std::vector<Critic>;

double critic_value(const Critic& critic, const Vector& view);

// Node groups by sensitive id, each ascending.
std::vector<std::vector<int>> group_index(const std::vector<int>& sensitive,
                                          int num_groups);

// Propagated attribute stacks for all dimensions at once.
struct JointViews {
  // hops[h] is the n x M matrix Z(h).
  std::vector<Matrix> hops;
  std::vector<std::vector<int>> groups;

  int horizon() const { return static_cast<int>(hops.size()) - 1; }
  int num_dims() const { return static_cast<int>(hops.front().cols()); }
  int num_groups() const { return static_cast<int>(groups.size()); }

  // |group g| x (H+1) matrix whose rows are the joint views of dimension m.
  Matrix view(int m, int g) const;
  // For each group, the M x (H+1) matrix of view means.
  std::vector<Matrix> group_means() const;
};

// P~ for a continuous adjacency. Throws DomainError on a negative entry.
Matrix propagation_step_matrix(const Matrix& a_tilde, double alpha);

// Throws DomainError if horizon < 1 or a_tilde has a negative entry.
JointViews build_joint_views(const Matrix& x_tilde, const Matrix& a_tilde,
                             double alpha, int horizon,
                             const std::vector<std::vector<int>>& groups);

// Binary-group objective: sum_m (mean_0 f_m - mean_1 f_m).
double loss_l1(const JointViews& views, const Critics& critics);
// All-pairs objective: sum_{i<j} sum_m (mean_i f_m - mean_j f_m)^2.
double loss_l1_multigroup(const JointViews& views, const Critics& critics);
// loss_l1 for two groups, loss_l1_multigroup otherwise.
double group_loss(const JointViews& views, const Critics& critics);

// Gradient of group_loss with respect to every critic weight (offsets have
// zero gradient).
std::vector<Vector> critic_gradient(const JointViews& views,
                                    const Critics& critics);

// One ascent step followed by clipping weights and offsets to [-c, c].
Critics critic_step(const Critics& critics, const JointViews& views, double lr,
                    double c);

// The fixed inputs of a debiasing run.
struct DebiasProblem {
  Matrix x;  // attributes in the normalized frame
  Matrix a;  // original binary adjacency
  std::vector<std::vector<int>> groups;
  double alpha = 0.5;
  int horizon = 2;

  static DebiasProblem from_network(const AttributedNetwork& net,
                                    double alpha, int horizon);
  int num_nodes() const { return static_cast<int>(x.rows()); }
  int num_dims() const { return static_cast<int>(x.cols()); }
};

// Gradients of group_loss with respect to theta and to each entry of A~
// (entries treated as independent; degrees are row sums).
struct LossGradients {
  double loss = 0.0;
  Vector d_theta;
  Matrix d_adjacency;
};
LossGradients loss_gradients(const DebiasProblem& problem, const Vector& theta,
                             const Matrix& a_tilde, const Critics& critics,
                             bool want_adjacency = true);

// Smooth parts of the two minimization objectives:
//   theta:  loss + mu1 ||X diag(theta) - X||_F^2
//   A~:     loss + mu3 ||A~ - A||_F^2
double theta_objective(const DebiasProblem& problem, const Vector& theta,
                       const Matrix& a_tilde, const Critics& critics,
                       double mu1);
Vector theta_objective_gradient(const DebiasProblem& problem,
                                const Vector& theta, const Matrix& a_tilde,
                                const Critics& critics, double mu1);
double adjacency_objective(const DebiasProblem& problem, const Vector& theta,
                           const Matrix& a_tilde, const Critics& critics,
                           double mu3);
Matrix adjacency_objective_gradient(const DebiasProblem& problem,
                                    const Vector& theta, const Matrix& a_tilde,
                                    const Critics& critics, double mu3);

// Running second-moment estimate for the adaptive step rule.
struct RmsPropState {
  Eigen::ArrayXXd square_avg;
};

struct DebiasState {
  Vector theta;
  Matrix a_tilde;
  Critics critics;
  RmsPropState critic_rms;
  RmsPropState theta_rms;
  RmsPropState adjacency_rms;
};

// theta = 1, A~ = A, critic weights and offsets uniform in [-c, c].
DebiasState initial_state(const DebiasProblem& problem, const DebiasConfig& cfg);

// Critic ascent step with cfg.critic_rule and cfg.critic_lr, then clipping.
void critic_update(DebiasState& state, const JointViews& views,
                   const DebiasConfig& cfg);

// One proximal step on theta: gradient step on the smooth objective,
// soft-threshold by lr * mu2, clip to [0,1].
void theta_step(DebiasState& state, const DebiasProblem& problem,
                const DebiasConfig& cfg, double lr);

// One proximal step on A~: gradient step on the smooth objective,
// soft-threshold by lr * mu4, clip to [0,1], zero the diagonal, symmetrize.
void adjacency_step(DebiasState& state, const DebiasProblem& problem,
                    const DebiasConfig& cfg, double lr);

// Zeroes the z smallest entries (ties by lowest index). Throws DomainError
// if z >= theta.size() or z < 0.
Vector mask_smallest(const Vector& theta, int z);

// Flips 0 -> 1 where A~ - A exceeds r * max(A~ - A) and 1 -> 0 where A - A~
// exceeds r * |min(A~ - A)|; every other entry keeps its original value. The
// result is symmetric (flips are OR-ed across the diagonal) with a zero
// diagonal.
Matrix binarize(const Matrix& a_tilde, const Matrix& a_original, double r);

struct DebiasResult {
  Matrix x_tilde;
  Matrix a_binary;
  Matrix a_continuous;
  Vector theta;  // after masking
  std::vector<int> masked_dims;
  std::vector<double> loss_trace;  // objective before each epoch's updates
  AttributedNetwork network;       // debiased network (normalized frame)
};

using EpochObserver = std::function<void(int epoch, const DebiasState& state)>;

// Runs the full alternating procedure on the min-max normalized attributes
// of `net`. Deterministic for a fixed config.
DebiasResult run_debias(const AttributedNetwork& net, const DebiasConfig& cfg,
                        const EpochObserver& observer = nullptr);

}  // namespace fairgraph::debias

#endif  // FAIRGRAPH_DEBIAS_H_
