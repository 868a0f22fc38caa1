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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fairgraph/network.h"
#include "oracles.h"

namespace fairgraph {
namespace {

Matrix complete_graph(int n) {
  Matrix a = Matrix::Ones(n, n);
  a.diagonal().setZero();
  return a;
}

AttributedNetwork tiny_network() {
  Matrix x(2, 1);
  x << 0.0, 1.0;
  return AttributedNetwork(complete_graph(2), x, {0, 1});
}

TEST(DegreeNormalize, SingleEdge) {
  EXPECT_TRUE(degree_normalize(complete_graph(2)).isApprox(complete_graph(2)));
}

TEST(DegreeNormalize, IsolatedNodeRowAndColumnAreZero) {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 1) = a(1, 0) = 1.0;
  const Matrix norm = degree_normalize(a);
  EXPECT_EQ(norm.row(2).squaredNorm(), 0.0);
  EXPECT_EQ(norm.col(2).squaredNorm(), 0.0);
  EXPECT_DOUBLE_EQ(norm(0, 1), 1.0);
}

TEST(DegreeNormalize, Triangle) {
  const Matrix norm = degree_normalize(complete_graph(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(norm(i, j), i == j ? 0.0 : 0.5, 1e-15);
    }
  }
}

TEST(NormalizedLaplacian, K2) {
  Matrix expected(2, 2);
  expected << 1, -1, -1, 1;
  EXPECT_TRUE(normalized_laplacian(complete_graph(2)).isApprox(expected));
}

TEST(NormalizedLaplacian, EmptyGraphIsZero) {
  EXPECT_EQ(normalized_laplacian(Matrix::Zero(3, 3)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(NormalizedLaplacian, K3Spectrum) {
  const auto eig = testing::jacobi_eigen(normalized_laplacian(complete_graph(3)));
  EXPECT_NEAR(eig.values(0), 0.0, 1e-12);
  EXPECT_NEAR(eig.values(1), 1.5, 1e-12);
  EXPECT_NEAR(eig.values(2), 1.5, 1e-12);
}

TEST(PropagationOperator, AlphaZeroIsIdentity) {
  const PropagationOperator op(degree_normalize(complete_graph(4)), 0.0,
                               {1.0});
  EXPECT_TRUE(op.p_norm().isApprox(Matrix::Identity(4, 4)));
}

TEST(PropagationOperator, K2HalfAlpha) {
  const PropagationOperator op(degree_normalize(complete_graph(2)), 0.5,
                               default_betas(2));
  EXPECT_TRUE(op.p_norm().isApprox(Matrix::Constant(2, 2, 0.5)));
}

TEST(PropagationOperator, AlphaOneIsNormalizedAdjacency) {
  const Matrix a_norm = degree_normalize(complete_graph(2));
  const PropagationOperator op(a_norm, 1.0, {1.0});
  EXPECT_TRUE(op.p_norm().isApprox(a_norm));
}

TEST(PropagationOperator, RejectsBadParameters) {
  const Matrix a_norm = degree_normalize(complete_graph(2));
  EXPECT_THROW(PropagationOperator(a_norm, 1.5, {1.0}), DomainError);
  EXPECT_THROW(PropagationOperator(a_norm, -0.1, {1.0}), DomainError);
  EXPECT_THROW(PropagationOperator(a_norm, 0.5, {}), DomainError);
  EXPECT_THROW(PropagationOperator(a_norm, 0.5, {0.2, 0.8}), DomainError);
  EXPECT_THROW(PropagationOperator(a_norm, 0.5, {1.0, -0.1}), DomainError);
}

TEST(DefaultBetas, HalvingWeightsSumToOne) {
  const auto betas = default_betas(2);
  ASSERT_EQ(betas.size(), 2u);
  EXPECT_NEAR(betas[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(betas[1], 1.0 / 3.0, 1e-15);
  double total = 0.0;
  for (double b : default_betas(5)) total += b;
  EXPECT_NEAR(total, 1.0, 1e-15);
}

TEST(MinmaxNormalize, Examples) {
  Matrix x(3, 3);
  x << 0, 3, 1,
       10, 3, 2,
       5, 3, 4;
  const Matrix out = minmax_normalize(x);
  EXPECT_DOUBLE_EQ(out(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(out(1, 0), 1.0);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(out(i, 1), 0.5);
  EXPECT_DOUBLE_EQ(out(0, 2), 0.0);
  EXPECT_NEAR(out(1, 2), 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(out(2, 2), 1.0);
}

TEST(AttributedNetwork, Accessors) {
  const AttributedNetwork net = tiny_network();
  EXPECT_EQ(net.num_nodes(), 2);
  EXPECT_EQ(net.num_attributes(), 1);
  EXPECT_EQ(net.num_groups(), 2);
  EXPECT_EQ(net.num_edges(), 1);
  EXPECT_EQ(net.group_members(1), std::vector<int>({1}));
  EXPECT_EQ(net.group_sizes(), std::vector<int>({1, 1}));
}

TEST(AttributedNetwork, RejectsInvalidInput) {
  Matrix x(2, 1);
  x << 0.0, 1.0;
  Matrix asym = Matrix::Zero(2, 2);
  asym(0, 1) = 1.0;
  EXPECT_THROW(AttributedNetwork(asym, x, {0, 1}), DomainError);
  Matrix loop = complete_graph(2);
  loop(0, 0) = 1.0;
  EXPECT_THROW(AttributedNetwork(loop, x, {0, 1}), DomainError);
  Matrix weighted = complete_graph(2) * 0.5;
  EXPECT_THROW(AttributedNetwork(weighted, x, {0, 1}), DomainError);
  EXPECT_THROW(AttributedNetwork(complete_graph(2), x, {0}), DomainError);
  EXPECT_THROW(AttributedNetwork(complete_graph(2), x, {0, 0}), DomainError);
  EXPECT_THROW(AttributedNetwork(complete_graph(2), x, {0, 1},
                                 std::vector<int>{0, 2}),
               DomainError);
  Matrix nan_x = x;
  nan_x(0, 0) = std::nan("");
  EXPECT_THROW(AttributedNetwork(complete_graph(2), nan_x, {0, 1}), DomainError);
}

}  // namespace
}  // namespace fairgraph
