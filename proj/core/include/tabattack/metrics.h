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

#ifndef TABATTACK_METRICS_H_
#define TABATTACK_METRICS_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>

#include "tabattack/victim.h"

namespace tabattack {

using ClassSet = std::set<std::string>;

struct DecisionCounts {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;

  DecisionCounts& operator+=(const DecisionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const DecisionCounts&,
                         const DecisionCounts&) = default;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Pooled (column, class) decisions. Throws std::invalid_argument on a length
// mismatch or an empty gold set.
DecisionCounts CountDecisions(std::span<const PredictionSet> predictions,
                              std::span<const ClassSet> gold);
// Same decisions split by class (every class seen in either side).
std::map<std::string, DecisionCounts> CountDecisionsByClass(
    std::span<const PredictionSet> predictions, std::span<const ClassSet> gold);

// P = TP/(TP+FP), R = TP/(TP+FN), F1 the harmonic mean. Empty denominators
// give 0.
Prf PrfFromCounts(const DecisionCounts& counts);
Prf MicroPrf(std::span<const PredictionSet> predictions,
             std::span<const ClassSet> gold);

// 100 * (baseline - perturbed) / baseline. Throws std::invalid_argument for a
// non-positive baseline.
double RelativeDrop(double baseline, double perturbed);

// "83.4 (6%)": the value with one decimal and the drop rounded to an integer
// percent, as the results tables print perturbed rows.
std::string FormatWithDrop(double value, double baseline);

}  // namespace tabattack

#endif  // TABATTACK_METRICS_H_
