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

#include "fairgraph/wasserstein.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fairgraph/common.h"

namespace fairgraph {

double wasserstein1(std::span<const double> samples0,
                    std::span<const double> samples1) {
  if (samples0.empty() || samples1.empty()) {
    throw DomainError("wasserstein1 needs two nonempty samples");
  }
  std::vector<double> a(samples0.begin(), samples0.end());
  std::vector<double> b(samples1.begin(), samples1.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());

  // Sweep the merged support; between consecutive breakpoints both CDFs are
  // constant, so the integrand is |i/na - j/nb| times the interval width.
  std::size_t i = 0, j = 0;
  double total = 0.0;
  double prev = std::min(a.front(), b.front());
  while (i < a.size() || j < b.size()) {
    double next;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      next = a[i];
    } else {
      next = b[j];
    }
    total += std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb) *
             (next - prev);
    while (i < a.size() && a[i] == next) ++i;
    while (j < b.size() && b[j] == next) ++j;
    prev = next;
  }
  return total;
}

}  // namespace fairgraph
