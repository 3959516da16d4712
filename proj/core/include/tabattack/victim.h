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

#ifndef TABATTACK_VICTIM_H_
#define TABATTACK_VICTIM_H_

#include <set>
#include <span>
#include <string>
#include <vector>

#include "tabattack/table.h"

namespace tabattack {

// Victim scores for an explicitly requested, ordered class list.
struct LogitVector {
  std::vector<std::string> classes;
  std::vector<double> scores;

  friend bool operator==(const LogitVector&, const LogitVector&) = default;
};

using PredictionSet = std::set<std::string>;

// Black-box CTA model: the attack only ever sees scores. Implementations
// must be deterministic and safe for concurrent const calls.
class Victim {
 public:
  virtual ~Victim() = default;

  // Scores for exactly `classes`, in request order. Throws UnknownClassError
  // for classes outside vocabulary(), TransportError for remote failures and
  // std::out_of_range for a bad column.
  virtual LogitVector PredictLogits(
      const Table& table, int col,
      std::span<const std::string> classes) const = 0;

  virtual const std::vector<std::string>& vocabulary() const = 0;
  virtual double threshold() const = 0;

  // {c in vocabulary : logit(c) >= threshold}, possibly empty.
  PredictionSet PredictClasses(const Table& table, int col) const;
};

}  // namespace tabattack

#endif  // TABATTACK_VICTIM_H_
