// Copyright 2026 The TabAttack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tabattack/vector_math.h"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

namespace tabattack {
namespace {

TEST(CosineTest, HandValues) {
  const Vector e1{0.3, -1.2, 2.0};
  EXPECT_NEAR(CosineSimilarity(e1, e1), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(CosineSimilarity(Vector{1, 0}, Vector{0, 1}), 0.0);
  EXPECT_NEAR(CosineSimilarity(Vector{1, 1, 0}, Vector{1, 0, 0}), 0.7071, 1e-4);
  EXPECT_DOUBLE_EQ(CosineSimilarity(Vector{1, 0}, Vector{-2, 0}), -1.0);
}

TEST(CosineTest, Errors) {
  EXPECT_THROW(CosineSimilarity(Vector{0, 0}, Vector{1, 0}),
               std::invalid_argument);
  EXPECT_THROW(CosineSimilarity(Vector{1, 0}, Vector{1, 0, 0}),
               std::invalid_argument);
  EXPECT_THROW(Normalized(Vector{0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(Dot(Vector{1}, Vector{1, 2}), std::invalid_argument);
}

TEST(CosineProperty, SymmetricBoundedAndSelfOne) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int i = 0; i < 500; ++i) {
    Vector u(1 + i % 40), v(u.size());
    for (auto& x : u) x = g(rng);
    for (auto& x : v) x = g(rng);
    const double uv = CosineSimilarity(u, v);
    EXPECT_EQ(uv, CosineSimilarity(v, u));
    EXPECT_LE(uv, 1.0);
    EXPECT_GE(uv, -1.0);
    EXPECT_NEAR(CosineSimilarity(u, u), 1.0, 1e-12);
  }
}

TEST(NormalizedTest, UnitNorm) {
  const Vector u = Normalized(Vector{3, 4});
  EXPECT_DOUBLE_EQ(u[0], 0.6);
  EXPECT_DOUBLE_EQ(u[1], 0.8);
  EXPECT_DOUBLE_EQ(Norm(u), 1.0);
}

}  // namespace
}  // namespace tabattack
