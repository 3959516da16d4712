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

#include <gtest/gtest.h>

#include <set>

#include "oracles.h"
#include "tabattack/attack.h"
#include "test_util.h"

namespace tabattack {
namespace {

using testing::MakeStore;

Table Wide(int m) {
  std::vector<std::string> headers, row;
  for (int i = 0; i < m; ++i) {
    headers.push_back("h" + std::to_string(i));
    row.push_back("v" + std::to_string(i));
  }
  return Table("wide", headers, {row}, {{0, {"A"}}});
}

std::shared_ptr<EmbeddingStore> WideSynonyms(int m) {
  auto store = std::make_shared<EmbeddingStore>(2);
  for (int i = 0; i < m; ++i) {
    store->Add("h" + std::to_string(i), Vector{1.0, 0.01 * i});
    store->Add("s" + std::to_string(i), Vector{-1.0, 0.01 * i});
  }
  return store;
}

TEST(HeaderSynonymAttackTest, FullPercentageReplacesEveryHeader) {
  const Table t = Wide(10);
  auto syn = MakeStore(2, {{"h0", {1, 0}}});
  for (int i = 1; i < 10; ++i) {
    syn->Add("h" + std::to_string(i), Vector{1, 1.0 * i});
  }
  const HeaderAttackResult r = HeaderSynonymAttack(t, 100, 3, *syn);
  EXPECT_EQ(r.selected.size(), 10u);
  EXPECT_EQ(r.swaps.size(), 10u);
  EXPECT_EQ(r.skips, 0);
  for (int c = 0; c < 10; ++c) {
    EXPECT_NE(r.adversarial_table.header(c), t.header(c));
  }
  EXPECT_EQ(r.adversarial_table.rows(), t.rows());
  EXPECT_EQ(r.adversarial_table.annotations(), t.annotations());
}

TEST(HeaderSynonymAttackTest, CountFollowsCeil) {
  const Table t = Wide(10);
  auto syn = WideSynonyms(10);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const HeaderAttackResult r = HeaderSynonymAttack(t, 20, seed, *syn);
    EXPECT_EQ(r.selected.size(), 2u);
    EXPECT_EQ(r.swaps.size(), 2u);
    EXPECT_EQ(std::set<int>(r.selected.begin(), r.selected.end()).size(), 2u);
  }
  EXPECT_EQ(HeaderSynonymAttack(t, 1, 0, *syn).selected.size(), 1u);
}

TEST(HeaderSynonymAttackTest, OutOfVocabularyHeadersAreSkipped) {
  const Table t("t", {"known", "unknown"}, {{"a", "b"}}, {{0, {"A"}}});
  auto syn = MakeStore(2, {{"known", {1, 0}}, {"other", {1, 0.1}}});
  const HeaderAttackResult r = HeaderSynonymAttack(t, 100, 0, *syn);
  EXPECT_EQ(r.selected.size(), 2u);
  ASSERT_EQ(r.swaps.size(), 1u);
  EXPECT_EQ(r.swaps[0].col, 0);
  EXPECT_EQ(r.swaps[0].replacement, "other");
  EXPECT_EQ(r.skips, 1);
  EXPECT_EQ(r.adversarial_table.header(1), "unknown");
}

TEST(HeaderSynonymAttackTest, PlantedSynonymsOnFixture) {
  const FixtureData& fx = testing::DefaultFixture();
  for (const FixtureClassInfo& c : fx.classes) {
    const Table t("t", {c.header}, {{"x"}}, {{0, {c.name}}});
    const HeaderAttackResult r = HeaderSynonymAttack(t, 100, 0, fx.synonyms);
    ASSERT_EQ(r.swaps.size(), 1u) << c.name;
    EXPECT_EQ(r.swaps[0].replacement, c.synonym);
    EXPECT_EQ(r.swaps[0].replacement,
              testing::OracleNearestSynonym(fx.synonyms, c.header));
  }
}

TEST(HeaderSynonymAttackTest, DeterministicAndValidated) {
  const Table t = Wide(8);
  auto syn = WideSynonyms(8);
  const HeaderAttackResult a = HeaderSynonymAttack(t, 40, 9, *syn);
  const HeaderAttackResult b = HeaderSynonymAttack(t, 40, 9, *syn);
  EXPECT_EQ(a.selected, b.selected);
  EXPECT_EQ(a.adversarial_table, b.adversarial_table);
  EXPECT_THROW(HeaderSynonymAttack(t, 0, 9, *syn), std::invalid_argument);
  EXPECT_THROW(HeaderSynonymAttack(t, 101, 9, *syn), std::invalid_argument);
}

}  // namespace
}  // namespace tabattack
