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

#include "tabattack/leakage.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace tabattack {
namespace {

using EntitySets = std::map<std::string, std::set<std::string>>;

template <typename Fn>
void ForEachLabeledEntity(const Corpus& corpus, Fn&& fn) {
  for (const Table& table : corpus.tables()) {
    for (const auto& [col, classes] : table.annotations()) {
      for (int row = 1; row <= table.num_rows(); ++row) {
        const std::string& surface = table.cell(row, col);
        if (surface.empty() || IsMasked(surface)) continue;
        for (const std::string& cls : classes) fn(cls, surface);
      }
    }
  }
}

}  // namespace

std::string_view CountModeName(CountMode mode) {
  return mode == CountMode::kUnique ? "unique" : "mention";
}

CountMode ParseCountMode(std::string_view name) {
  if (name == "unique") return CountMode::kUnique;
  if (name == "mention") return CountMode::kMention;
  throw std::invalid_argument("unknown count mode '" + std::string(name) + "'");
}

double OverlapPercent(int64_t overlap, int64_t total) {
  if (overlap < 0 || total < 0 || overlap > total) {
    throw std::invalid_argument("overlap " + std::to_string(overlap) + " of " +
                                std::to_string(total));
  }
  if (total == 0) return 0.0;
  // Hundredths of a percent, half-up: round(10000 * overlap / total).
  const int64_t hundredths = (20000 * overlap + total) / (2 * total);
  int64_t tenths = hundredths / 10;
  const int64_t rem = hundredths % 10;
  if (rem > 5 || (rem == 5 && tenths % 2 == 1)) ++tenths;
  return static_cast<double>(tenths) / 10.0;
}

LeakageReport ComputeLeakage(const Corpus& train, const Corpus& test,
                             CountMode mode) {
  EntitySets train_sets;
  ForEachLabeledEntity(train,
                       [&](const std::string& cls, const std::string& surface) {
                         train_sets[cls].insert(surface);
                       });

  std::map<std::string, LeakageRow> rows;
  EntitySets seen;
  ForEachLabeledEntity(
      test, [&](const std::string& cls, const std::string& surface) {
        if (mode == CountMode::kUnique && !seen[cls].insert(surface).second) {
          return;
        }
        LeakageRow& row = rows[cls];
        row.cls = cls;
        ++row.total;
        auto it = train_sets.find(cls);
        if (it != train_sets.end() && it->second.contains(surface))
          ++row.overlap;
      });

  LeakageReport report;
  report.mode = mode;
  for (auto& [cls, row] : rows) {
    row.pct = OverlapPercent(row.overlap, row.total);
    report.rows.push_back(std::move(row));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const LeakageRow& a, const LeakageRow& b) {
                     return a.total > b.total;
                   });
  return report;
}

void WriteLeakageCsv(const LeakageReport& report, std::ostream& out) {
  out << "class,total,overlap,pct\n";
  char pct[32];
  for (const LeakageRow& row : report.rows) {
    std::snprintf(pct, sizeof(pct), "%.1f", row.pct);
    out << row.cls << ',' << row.total << ',' << row.overlap << ',' << pct
        << '\n';
  }
}

}  // namespace tabattack
