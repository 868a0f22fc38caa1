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

#include <vector>

#include <gtest/gtest.h>

#include "fairgraph/common.h"
#include "fairgraph/wasserstein.h"
#include "oracles.h"

namespace fairgraph {
namespace {

TEST(Wasserstein1, IdenticalSamplesAreAtZeroDistance) {
  const std::vector<double> a = {0.0, 1.0};
  EXPECT_EQ(wasserstein1(a, a), 0.0);
}

TEST(Wasserstein1, UnitTranslation) {
  const std::vector<double> a = {0.0}, b = {1.0};
  EXPECT_DOUBLE_EQ(wasserstein1(a, b), 1.0);
}

TEST(Wasserstein1, MatchesTransportOracleOnSmallExample) {
  const std::vector<double> a = {0.0, 1.0, 2.0}, b = {0.0, 0.0, 3.0};
  const double oracle = testing::transport_lp_w1(a, b);
  EXPECT_NEAR(oracle, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(wasserstein1(a, b), oracle, 1e-12);
}

TEST(Wasserstein1, UnequalSizes) {
  const std::vector<double> a = {0.0, 2.0}, b = {1.0};
  EXPECT_NEAR(wasserstein1(a, b), 1.0, 1e-12);
  const std::vector<double> c = {0.0, 0.0, 4.0}, d = {1.0, 3.0};
  EXPECT_NEAR(wasserstein1(c, d), testing::transport_lp_w1(c, d), 1e-12);
}

TEST(Wasserstein1, EmptySampleThrows) {
  const std::vector<double> a = {1.0}, empty;
  EXPECT_THROW(wasserstein1(a, empty), DomainError);
  EXPECT_THROW(wasserstein1(empty, a), DomainError);
}

TEST(Oracles, TransportAgreesWithAssignment) {
  const std::vector<double> a = {3.0, -1.0, 0.5, 2.0}, b = {0.0, 0.0, 1.0, -4.0};
  EXPECT_NEAR(testing::transport_lp_w1(a, b), testing::assignment_w1(a, b),
              1e-12);
}

}  // namespace
}  // namespace fairgraph
