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

#ifndef TABATTACK_REPORT_H_
#define TABATTACK_REPORT_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "tabattack/sweep.h"

namespace tabattack {

// `p,selection,sampling,pool,seed,precision,recall,f1,drop_f1_pct,
// success_rate,skip_rate`; P/R/F1 are scaled by 100.
void WriteSweepCsv(std::span<const MetricsRow> rows, std::ostream& out);

// Results-table layout: one line per (selection, sampling, pool, p) with
// metrics averaged over seeds and printed as "83.4 (6%)". The baseline line
// has p = 0 and plain values.
void WriteResultsTableCsv(std::span<const MetricsRow> rows, std::ostream& out);

// Long-format curve data, one series per selection x sampling (x pool),
// each line carrying the baseline F1 as the reference level.
void WriteSeriesCsv(std::span<const MetricsRow> rows, std::ostream& out);

// Per-class decision counts for every row.
void WritePerClassCsv(std::span<const MetricsRow> rows, std::ostream& out);

struct ReportFiles {
  std::filesystem::path sweep;
  std::filesystem::path table;
  std::filesystem::path series;
  std::filesystem::path per_class;
};

// Writes the four files into `dir`. Throws std::invalid_argument when the
// baseline row is missing.
ReportFiles EmitReport(std::span<const MetricsRow> rows,
                       const std::filesystem::path& dir);

}  // namespace tabattack

#endif  // TABATTACK_REPORT_H_
