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

#include "tabattack/report.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>

#include "tabattack/errors.h"

namespace tabattack {
namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string SeedField(const MetricsRow& row) {
  return row.seed ? std::to_string(*row.seed) : "-";
}

const MetricsRow& Baseline(std::span<const MetricsRow> rows) {
  for (const MetricsRow& r : rows) {
    if (r.is_baseline()) return r;
  }
  throw std::invalid_argument("report rows lack a baseline (p = 0) row");
}

void Coordinates(const MetricsRow& row, std::ostream& out) {
  out << row.p << ',' << row.selection << ',' << row.sampling << ',' << row.pool
      << ',' << SeedField(row);
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

}  // namespace

void WriteSweepCsv(std::span<const MetricsRow> rows, std::ostream& out) {
  out << "p,selection,sampling,pool,seed,precision,recall,f1,drop_f1_pct,"
         "success_rate,skip_rate\n";
  for (const MetricsRow& row : rows) {
    Coordinates(row, out);
    out << ',' << Fixed(100 * row.precision, 4) << ','
        << Fixed(100 * row.recall, 4) << ',' << Fixed(100 * row.f1, 4) << ','
        << Fixed(row.drop_f1_pct, 4) << ',' << Fixed(row.success_rate, 4) << ','
        << Fixed(row.skip_rate, 4) << '\n';
  }
}

void WriteResultsTableCsv(std::span<const MetricsRow> rows, std::ostream& out) {
  const MetricsRow& base = Baseline(rows);
  struct Sum {
    double p = 0, r = 0, f1 = 0;
    int n = 0;
  };
  std::map<std::tuple<std::string, std::string, std::string, int>, Sum> sums;
  for (const MetricsRow& row : rows) {
    if (row.is_baseline()) continue;
    Sum& s = sums[{row.selection, row.sampling, row.pool, row.p}];
    s.p += row.precision;
    s.r += row.recall;
    s.f1 += row.f1;
    ++s.n;
  }
  out << "selection,sampling,pool,p,f1,precision,recall\n";
  out << "none,none,none,0," << Fixed(100 * base.f1, 2) << ','
      << Fixed(100 * base.precision, 2) << ',' << Fixed(100 * base.recall, 2)
      << '\n';
  auto cell = [](double value, double baseline) {
    return baseline > 0 ? FormatWithDrop(100 * value, 100 * baseline)
                        : Fixed(100 * value, 1);
  };
  for (const auto& [key, s] : sums) {
    const auto& [selection, sampling, pool, p] = key;
    out << selection << ',' << sampling << ',' << pool << ',' << p << ','
        << cell(s.f1 / s.n, base.f1) << ',' << cell(s.p / s.n, base.precision)
        << ',' << cell(s.r / s.n, base.recall) << '\n';
  }
}

void WriteSeriesCsv(std::span<const MetricsRow> rows, std::ostream& out) {
  const MetricsRow& base = Baseline(rows);
  out << "series,selection,sampling,pool,p,seed,f1,baseline_f1\n";
  for (const MetricsRow& row : rows) {
    if (row.is_baseline()) continue;
    out << row.selection << '+' << row.sampling << '@' << row.pool << ','
        << row.selection << ',' << row.sampling << ',' << row.pool << ','
        << row.p << ',' << SeedField(row) << ',' << Fixed(100 * row.f1, 4)
        << ',' << Fixed(100 * base.f1, 4) << '\n';
  }
}

void WritePerClassCsv(std::span<const MetricsRow> rows, std::ostream& out) {
  out << "p,selection,sampling,pool,seed,class,tp,fp,fn,f1\n";
  for (const MetricsRow& row : rows) {
    for (const auto& [cls, c] : row.per_class) {
      Coordinates(row, out);
      out << ',' << cls << ',' << c.tp << ',' << c.fp << ',' << c.fn << ','
          << Fixed(100 * PrfFromCounts(c).f1, 4) << '\n';
    }
  }
}

ReportFiles EmitReport(std::span<const MetricsRow> rows,
                       const std::filesystem::path& dir) {
  Baseline(rows);
  std::filesystem::create_directories(dir);
  ReportFiles files{dir / "sweep.csv", dir / "table.csv", dir / "series.csv",
                    dir / "per_class.csv"};
  {
    auto out = OpenOut(files.sweep);
    WriteSweepCsv(rows, out);
  }
  {
    auto out = OpenOut(files.table);
    WriteResultsTableCsv(rows, out);
  }
  {
    auto out = OpenOut(files.series);
    WriteSeriesCsv(rows, out);
  }
  {
    auto out = OpenOut(files.per_class);
    WritePerClassCsv(rows, out);
  }
  return files;
}

}  // namespace tabattack
