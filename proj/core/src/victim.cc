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

#include "tabattack/victim.h"

namespace tabattack {

PredictionSet Victim::PredictClasses(const Table& table, int col) const {
  const LogitVector logits = PredictLogits(table, col, vocabulary());
  PredictionSet out;
  for (std::size_t i = 0; i < logits.classes.size(); ++i) {
    if (logits.scores[i] >= threshold()) out.insert(logits.classes[i]);
  }
  return out;
}

}  // namespace tabattack
