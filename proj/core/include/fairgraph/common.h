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

#ifndef FAIRGRAPH_COMMON_H_
#define FAIRGRAPH_COMMON_H_

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fairgraph {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Largest network the dense representation accepts.
inline constexpr int kMaxNodes = 10000;

// Raised when an input violates a documented precondition (bad shapes,
// invalid hyperparameters, empty groups). Maps to CLI exit code 1.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a file cannot be opened or its contents cannot be parsed.
// Maps to CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Worker cap, read from EDITS_THREADS (unset or invalid means 1).
int max_threads();

// Runs fn(i) for i in [0, count). Work is split into contiguous chunks, one
// per worker; each index is processed by exactly one call, so results that
// only depend on fn(i) are identical for any thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace fairgraph

#endif  // FAIRGRAPH_COMMON_H_
