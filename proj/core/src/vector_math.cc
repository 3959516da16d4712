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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tabattack {

double Dot(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument(
        "dimension mismatch: " + std::to_string(u.size()) + " vs " +
        std::to_string(v.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += u[i] * v[i];
  return sum;
}

double Norm(std::span<const double> u) { return std::sqrt(Dot(u, u)); }

Vector Normalized(std::span<const double> u) {
  const double norm = Norm(u);
  if (norm == 0.0) throw std::invalid_argument("cannot normalize zero vector");
  Vector out(u.begin(), u.end());
  for (double& x : out) x /= norm;
  return out;
}

double CosineSimilarity(std::span<const double> u, std::span<const double> v) {
  const double dot = Dot(u, v);
  const double nu = Norm(u);
  const double nv = Norm(v);
  if (nu == 0.0 || nv == 0.0) {
    throw std::invalid_argument("cosine similarity of a zero vector");
  }
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

}  // namespace tabattack
