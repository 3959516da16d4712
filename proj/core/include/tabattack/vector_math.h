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

#ifndef TABATTACK_VECTOR_MATH_H_
#define TABATTACK_VECTOR_MATH_H_

#include <span>
#include <vector>

namespace tabattack {

using Vector = std::vector<double>;

double Dot(std::span<const double> u, std::span<const double> v);
double Norm(std::span<const double> u);

// Returns u / |u|; throws std::invalid_argument for the zero vector.
Vector Normalized(std::span<const double> u);

// dot(u, v) / (|u| |v|), clamped to [-1, 1]. Throws std::invalid_argument on
// a zero vector or a dimension mismatch.
double CosineSimilarity(std::span<const double> u, std::span<const double> v);

}  // namespace tabattack

#endif  // TABATTACK_VECTOR_MATH_H_
