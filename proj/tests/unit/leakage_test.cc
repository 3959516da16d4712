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

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <stdexcept>

#include "test_util.h"

namespace tabattack {
namespace {

using testing::ColumnTable;

TEST(OverlapPercentTest, PrintedRatios) {
  EXPECT_DOUBLE_EQ(OverlapPercent(29215, 47852), 61.0);
  EXPECT_DOUBLE_EQ(OverlapPercent(10, 10), 100.0);
  EXPECT_DOUBLE_EQ(OverlapPercent(0, 10), 0.0);
  EXPECT_DOUBLE_EQ(OverlapPercent(1, 3), 33.3);
  EXPECT_DOUBLE_EQ(OverlapPercent(2, 3), 66.7);
  EXPECT_DOUBLE_EQ(OverlapPercent(0, 0), 0.0);
  EXPECT_THROW(OverlapPercent(3, 2), std::invalid_argument);
  EXPECT_THROW(OverlapPercent(-1, 2), std::invalid_argument);
}

TEST(OverlapPercentTest, TenthOfTheTwoDecimalValue) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5000; ++i) {
    const int64_t total = 1 + rng() % 100000;
    const int64_t overlap = rng() % (total + 1);
    const double exact = 100.0 * overlap / total;
    const double two = std::round(exact * 100.0) / 100.0;
    const double got = OverlapPercent(overlap, total);
    EXPECT_LE(std::abs(got - two), 0.05 + 1e-9) << overlap << "/" << total;
    EXPECT_LE(std::abs(got - exact), 0.055 + 1e-9);
    EXPECT_DOUBLE_EQ(got * 10.0, std::round(got * 10.0));
  }
}

Corpus TrainCorpus() {
  return Corpus({ColumnTable("tr1", "h", {"a", "b"}, {"city", "location"}),
                 ColumnTable("tr2", "h", {"x"}, {"person"})},
                Split::kTrain);
}

Corpus TestCorpus() {
  return Corpus(
      {ColumnTable("te1", "h", {"a", "c", "a", "[MASK]"}, {"city", "location"}),
       ColumnTable("te2", "h", {"b", "b"}, {"city", "location"}),
       ColumnTable("te3", "h", {"a"}, {"person"}),
       ColumnTable("te4", "h", {"q"}, {"team"}),
       ColumnTable("te5", "h", {"x", "x"}, {"person"})},
      Split::kTest);
}

const LeakageRow& RowOf(const LeakageReport& r, const std::string& cls) {
  for (const LeakageRow& row : r.rows) {
    if (row.cls == cls) return row;
  }
  throw std::out_of_range(cls);
}

TEST(ComputeLeakageTest, UniqueCounts) {
  const LeakageReport r =
      ComputeLeakage(TrainCorpus(), TestCorpus(), CountMode::kUnique);
  EXPECT_EQ(r.mode, CountMode::kUnique);
  // city: {a, c, b}, of which a and b appear in train city columns.
  EXPECT_EQ(RowOf(r, "city").total, 3);
  EXPECT_EQ(RowOf(r, "city").overlap, 2);
  EXPECT_DOUBLE_EQ(RowOf(r, "city").pct, 66.7);
  EXPECT_EQ(RowOf(r, "location").overlap, 2);
  // person: {a, x}; "a" is only a train city, so it does not count.
  EXPECT_EQ(RowOf(r, "person").total, 2);
  EXPECT_EQ(RowOf(r, "person").overlap, 1);
  // team is absent from train.
  EXPECT_EQ(RowOf(r, "team").overlap, 0);
  EXPECT_DOUBLE_EQ(RowOf(r, "team").pct, 0.0);
}

TEST(ComputeLeakageTest, MentionCountsDifferButClassesAgree) {
  const LeakageReport u =
      ComputeLeakage(TrainCorpus(), TestCorpus(), CountMode::kUnique);
  const LeakageReport m =
      ComputeLeakage(TrainCorpus(), TestCorpus(), CountMode::kMention);
  ASSERT_EQ(u.rows.size(), m.rows.size());
  std::set<std::string> cu, cm;
  for (const auto& r : u.rows) cu.insert(r.cls);
  for (const auto& r : m.rows) cm.insert(r.cls);
  EXPECT_EQ(cu, cm);
  // city mentions: a, c, a, b, b.
  EXPECT_EQ(RowOf(m, "city").total, 5);
  EXPECT_EQ(RowOf(m, "city").overlap, 4);
  EXPECT_NE(RowOf(m, "city").total, RowOf(u, "city").total);
}

TEST(ComputeLeakageTest, SortedByTotalAndSelfConsistent) {
  const LeakageReport r =
      ComputeLeakage(TrainCorpus(), TestCorpus(), CountMode::kMention);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    EXPECT_GE(r.rows[i - 1].total, r.rows[i].total);
  }
  for (const LeakageRow& row : r.rows) {
    EXPECT_LE(row.overlap, row.total);
    EXPECT_EQ(row.pct, OverlapPercent(row.overlap, row.total));
  }
}

TEST(ComputeLeakageTest, FullOverlapReportsHundred) {
  const Corpus train({ColumnTable("a", "h", {"p", "q"}, {"c"})}, Split::kTrain);
  const Corpus test({ColumnTable("b", "h", {"q", "p"}, {"c"})}, Split::kTest);
  const LeakageReport r = ComputeLeakage(train, test, CountMode::kUnique);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(r.rows[0].pct, 100.0);
}

TEST(ComputeLeakageTest, FixturePlantedFractions) {
  const FixtureData& fx = testing::DefaultFixture();
  const LeakageReport r = ComputeLeakage(fx.train, fx.test, CountMode::kUnique);
  for (const FixtureClassInfo& c : fx.classes) {
    const LeakageRow& row = RowOf(r, c.name);
    EXPECT_EQ(row.total, c.test_entities);
    EXPECT_EQ(row.overlap, c.overlap);
  }
  EXPECT_DOUBLE_EQ(RowOf(r, fx.classes.back().name).pct, 100.0);
}

TEST(WriteLeakageCsvTest, Format) {
  LeakageReport r;
  r.rows = {{"people.person", 47852, 29215, OverlapPercent(29215, 47852)},
            {"x", 1, 1, 100.0}};
  std::ostringstream out;
  WriteLeakageCsv(r, out);
  EXPECT_EQ(out.str(),
            "class,total,overlap,pct\n"
            "people.person,47852,29215,61.0\n"
            "x,1,1,100.0\n");
}

TEST(CountModeTest, Names) {
  EXPECT_EQ(ParseCountMode("mention"), CountMode::kMention);
  EXPECT_EQ(CountModeName(CountMode::kUnique), "unique");
  EXPECT_THROW(ParseCountMode("bogus"), std::invalid_argument);
}

}  // namespace
}  // namespace tabattack
