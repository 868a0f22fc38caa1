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

#ifndef FAIRGRAPH_WASSERSTEIN_H_
#define FAIRGRAPH_WASSERSTEIN_H_

#include <span>

namespace fairgraph {

// Exact Wasserstein-1 distance between two empirical distributions on the
// real line, computed as the area between their CDFs. Sample sizes may
// differ. O((n0 + n1) log(n0 + n1)). Throws DomainError on an empty input.
double wasserstein1(std::span<const double> samples0,
                    std::span<const double> samples1);

}  // namespace fairgraph

#endif  // FAIRGRAPH_WASSERSTEIN_H_
