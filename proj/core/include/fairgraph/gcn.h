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

// Two-layer graph convolutional node classifier, trained full batch.

#ifndef FAIRGRAPH_GCN_H_
#define FAIRGRAPH_GCN_H_

#include <cstdint>
#include <vector>

#include <Eigen/SparseCore>

#include "fairgraph/network.h"

namespace fairgraph {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct GcnHyper {
  int hidden = 16;
  double dropout = 0.05;
  double lr = 1e-3;
  int epochs = 1000;
  // L2 penalty on w1 and w2 (not on the biases).
  double weight_decay = 5e-4;
  std::uint64_t seed = 0;
};

void validate(const GcnHyper& hyper);

struct GcnModel {
  Matrix w1;  // M x hidden
  Vector b1;  // hidden
  Matrix w2;  // hidden x classes
  Vector b2;  // classes
  std::uint64_t seed = 0;

  int num_inputs() const { return static_cast<int>(w1.rows()); }
  int hidden() const { return static_cast<int>(w1.cols()); }
  int num_classes() const { return static_cast<int>(w2.cols()); }
};

// Glorot-uniform weights, zero biases.
GcnModel init_gcn(int num_inputs, int hidden, int num_classes,
                  std::uint64_t seed);

// D^-1/2 (A + I) D^-1/2 as a sparse matrix.
SparseMatrix gcn_propagation(const Matrix& adjacency);

// Per-node class probabilities (n x classes). When training, hidden units
// are dropped with probability `dropout` using a stream derived from
// (model.seed, dropout_step). Throws DomainError on a width mismatch.
Matrix gcn_forward(const GcnModel& model, const AttributedNetwork& net,
                   bool training = false, double dropout = 0.0,
                   std::uint64_t dropout_step = 0);
Matrix gcn_forward(const GcnModel& model, const SparseMatrix& propagation,
                   const Matrix& attributes, bool training = false,
                   double dropout = 0.0, std::uint64_t dropout_step = 0);

struct TrainResult {
  GcnModel model;
  std::vector<double> loss_history;  // training cross-entropy per epoch
};

// Full-batch cross-entropy on `train` with Adam. Throws DomainError when
// labels are missing or `train` is empty.
TrainResult train_gcn(const AttributedNetwork& net,
                      const std::vector<int>& train, const GcnHyper& hyper);

// Probability of class 1 for every node, in evaluation mode.
Vector positive_scores(const GcnModel& model, const AttributedNetwork& net);

}  // namespace fairgraph

#endif  // FAIRGRAPH_GCN_H_
