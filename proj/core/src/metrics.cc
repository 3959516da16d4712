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

#include "tabattack/metrics.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tabattack {
namespace {

void CheckShapes(std::span<const PredictionSet> predictions,
                 std::span<const ClassSet> gold) {
  if (predictions.size() != gold.size()) {
    throw std::invalid_argument("predictions and gold differ in length");
  }
  for (const ClassSet& g : gold) {
    if (g.empty()) throw std::invalid_argument("empty gold class set");
  }
}

}  // namespace

DecisionCounts CountDecisions(std::span<const PredictionSet> predictions,
                              std::span<const ClassSet> gold) {
  CheckShapes(predictions, gold);
  DecisionCounts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (const std::string& p : predictions[i]) {
      if (gold[i].contains(p)) {
        ++c.tp;
      } else {
        ++c.fp;
      }
    }
    for (const std::string& g : gold[i]) {
      if (!predictions[i].contains(g)) ++c.fn;
    }
  }
  return c;
}

std::map<std::string, DecisionCounts> CountDecisionsByClass(
    std::span<const PredictionSet> predictions,
    std::span<const ClassSet> gold) {
  CheckShapes(predictions, gold);
  std::map<std::string, DecisionCounts> out;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (const std::string& p : predictions[i]) {
      if (gold[i].contains(p)) {
        ++out[p].tp;
      } else {
        ++out[p].fp;
      }
    }
    for (const std::string& g : gold[i]) {
      if (!predictions[i].contains(g)) ++out[g].fn;
    }
  }
  return out;
}

Prf PrfFromCounts(const DecisionCounts& c) {
  Prf m;
  if (c.tp + c.fp > 0) m.precision = static_cast<double>(c.tp) / (c.tp + c.fp);
  if (c.tp + c.fn > 0) m.recall = static_cast<double>(c.tp) / (c.tp + c.fn);
  if (m.precision + m.recall > 0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  }
  return m;
}

Prf MicroPrf(std::span<const PredictionSet> predictions,
             std::span<const ClassSet> gold) {
  return PrfFromCounts(CountDecisions(predictions, gold));
}

double RelativeDrop(double baseline, double perturbed) {
  if (!(baseline > 0.0)) {
    throw std::invalid_argument("relative drop needs a positive baseline");
  }
  return 100.0 * (baseline - perturbed) / baseline;
}

std::string FormatWithDrop(double value, double baseline) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f (%ld%%)", value,
                std::lround(RelativeDrop(baseline, value)));
  return buf;
}

}  // namespace tabattack
