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

#ifndef TABATTACK_LEAKAGE_H_
#define TABATTACK_LEAKAGE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tabattack/table.h"

namespace tabattack {

enum class CountMode { kUnique, kMention };

std::string_view CountModeName(CountMode mode);
CountMode ParseCountMode(std::string_view name);

struct LeakageRow {
  std::string cls;
  int64_t total = 0;    // test entities (unique or mentions)
  int64_t overlap = 0;  // of those, also seen in train under the same class
  double pct = 0.0;     // OverlapPercent(overlap, total)
};

struct LeakageReport {
  CountMode mode = CountMode::kUnique;
  std::vector<LeakageRow> rows;  // total descending, then class name
};

// 100 * overlap / total to one decimal. The ratio is first rounded half-up
// to hundredths of a percent and then half-to-even to tenths, in exact
// integer arithmetic, so 29215 / 47852 reports 61.0.
double OverlapPercent(int64_t overlap, int64_t total);

// Per class label (every label of a column annotation, not only the most
// specific one), counts test entities and how many of them also occur in a
// train column carrying that label. Masked and empty cells are ignored.
LeakageReport ComputeLeakage(const Corpus& train, const Corpus& test,
                             CountMode mode);

// CSV with header `class,total,overlap,pct`.
void WriteLeakageCsv(const LeakageReport& report, std::ostream& out);

}  // namespace tabattack

#endif  // TABATTACK_LEAKAGE_H_
