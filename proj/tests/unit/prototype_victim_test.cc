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

#include "tabattack/prototype_victim.h"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "tabattack/errors.h"
#include "tabattack/vector_math.h"
#include "test_util.h"

namespace tabattack {
namespace {

using testing::ColumnTable;
using testing::MakeStore;

std::shared_ptr<EmbeddingStore> Axes() {
  return MakeStore(3, {{"x1", {1, 0, 0}},
                       {"y", {0, 1, 0}},
                       {"z", {0, 0, 1}},
                       {"near_ab_1", {1, 0.9, 0}},
                       {"near_ab_2", {0.9, 1, 0}},
                       {"hdr", {0, 0, 1}}});
}

PrototypeVictim AxisVictim(double w_h, double tau = 0.5) {
  return PrototypeVictim({{"A", {1, 0, 0}}, {"B", {0, 1, 0}}, {"C", {0, 0, 1}}},
                         Axes(), {w_h, tau});
}

const std::vector<std::string> kA{"A"};

TEST(PrototypeVictimTest, OnPrototypeColumnScoresOne) {
  const PrototypeVictim v = AxisVictim(0.0);
  const Table t = ColumnTable("t", "hdr", {"x1", "x1", "x1"}, {"A"});
  EXPECT_DOUBLE_EQ(v.PredictLogits(t, 0, kA).scores[0], 1.0);
  const std::vector<std::string> orth{"B"};
  EXPECT_DOUBLE_EQ(v.PredictLogits(t, 0, orth).scores[0], 0.0);
}

TEST(PrototypeVictimTest, TwoEntityColumnHandCosine) {
  const PrototypeVictim v = AxisVictim(0.0);
  // mean(x, y) = (0.5, 0.5, 0); cosine to x is 1/sqrt(2).
  const Table t = ColumnTable("t", "hdr", {"x1", "y"}, {"A"});
  EXPECT_NEAR(v.PredictLogits(t, 0, kA).scores[0], 0.707, 1e-3);
}

TEST(PrototypeVictimTest, LogitsFollowRequestOrder) {
  const PrototypeVictim v = AxisVictim(0.0);
  const Table t = ColumnTable("t", "hdr", {"x1", "y"}, {"A"});
  const std::vector<std::string> req{"C", "A", "B", "A"};
  const LogitVector out = v.PredictLogits(t, 0, req);
  EXPECT_EQ(out.classes, req);
  ASSERT_EQ(out.scores.size(), 4u);
  EXPECT_DOUBLE_EQ(out.scores[0], 0.0);
  EXPECT_EQ(out.scores[1], out.scores[3]);
}

TEST(PrototypeVictimTest, Errors) {
  const PrototypeVictim v = AxisVictim(0.0);
  const Table t = ColumnTable("t", "hdr", {"x1"}, {"A"});
  const std::vector<std::string> unknown{"A", "Q"};
  EXPECT_THROW(v.PredictLogits(t, 0, unknown), UnknownClassError);
  EXPECT_THROW(v.PredictLogits(t, 0, {}), std::invalid_argument);
  EXPECT_THROW(v.PredictLogits(t, 1, kA), std::out_of_range);
}

TEST(PrototypeVictimTest, ConstructorValidates) {
  auto store = Axes();
  EXPECT_THROW(PrototypeVictim({{"A", {2, 0, 0}}}, store, {0.3, 0.5}),
               std::invalid_argument);
  EXPECT_THROW(PrototypeVictim({{"A", {1, 0}}}, store, {0.3, 0.5}),
               std::invalid_argument);
  EXPECT_THROW(PrototypeVictim({{"A", {1, 0, 0}}}, store, {1.0, 0.5}),
               std::invalid_argument);
  EXPECT_THROW(PrototypeVictim({{"A", {1, 0, 0}}}, store, {-0.1, 0.5}),
               std::invalid_argument);
  EXPECT_THROW(PrototypeVictim({{"A", {1, 0, 0}}}, store, {0.3, 1.0}),
               std::invalid_argument);
  EXPECT_THROW(PrototypeVictim({}, store, {0.3, 0.5}), std::invalid_argument);
}

TEST(PredictClassesTest, EmptyWhenEverythingBelowThreshold) {
  const PrototypeVictim v = AxisVictim(0.0, 0.9);
  const Table t = ColumnTable("t", "hdr", {"x1", "y"}, {"A"});
  EXPECT_TRUE(v.PredictClasses(t, 0).empty());
}

TEST(PredictClassesTest, Singleton) {
  const PrototypeVictim v = AxisVictim(0.0, 0.5);
  const Table t = ColumnTable("t", "hdr", {"x1"}, {"A"});
  EXPECT_EQ(v.PredictClasses(t, 0), (PredictionSet{"A"}));
}

TEST(PredictClassesTest, ColumnBetweenTwoCentroids) {
  const PrototypeVictim v = AxisVictim(0.0, 0.5);
  // Hand: the mean points along (1, 1, 0), cos 0.7071 to A and B, 0 to C.
  const Table t = ColumnTable("t", "hdr", {"near_ab_1", "near_ab_2"}, {"A"});
  EXPECT_EQ(v.PredictClasses(t, 0), (PredictionSet{"A", "B"}));
}

TEST(PrototypeVictimTest, HeaderWeightMixesHeader) {
  const PrototypeVictim v = AxisVictim(0.3);
  const Table t = ColumnTable("t", "hdr", {"x1"}, {"A"});
  // repr = normalize(0.7 x + 0.3 z)
  const double norm = std::sqrt(0.49 + 0.09);
  const std::vector<std::string> ac{"A", "C"};
  const LogitVector out = v.PredictLogits(t, 0, ac);
  EXPECT_NEAR(out.scores[0], 0.7 / norm, 1e-12);
  EXPECT_NEAR(out.scores[1], 0.3 / norm, 1e-12);
}

TEST(PrototypeVictimTest, AllMaskedColumnKeepsWeightedHeader) {
  const PrototypeVictim v = AxisVictim(0.3);
  const Table t = ColumnTable("t", "hdr", {"[MASK]", "[MASK]"}, {"A"});
  const std::vector<std::string> ac{"A", "C"};
  const LogitVector out = v.PredictLogits(t, 0, ac);
  EXPECT_DOUBLE_EQ(out.scores[0], 0.0);
  EXPECT_DOUBLE_EQ(out.scores[1], 0.3);
  const PrototypeVictim blind = AxisVictim(0.0);
  EXPECT_DOUBLE_EQ(blind.PredictLogits(t, 0, ac).scores[1], 0.0);
}

TEST(PrototypeVictimTest, MissingEmbeddingPolicy) {
  const Table t = ColumnTable("t", "unknown header", {"x1", "nobody"}, {"A"});
  const PrototypeVictim skip = AxisVictim(0.3);
  EXPECT_DOUBLE_EQ(skip.PredictLogits(t, 0, kA).scores[0], 1.0);
  const PrototypeVictim fail({{"A", {1, 0, 0}}}, Axes(),
                             {0.3, 0.5, MissingEmbedding::kFail});
  EXPECT_THROW(fail.PredictLogits(t, 0, kA), std::invalid_argument);
}

TEST(BuildPrototypeVictimTest, OneEntityGivesItsDirection) {
  auto store = MakeStore(2, {{"e", {3, 4}}});
  const Corpus train({ColumnTable("t", "h", {"e"}, {"c"})}, Split::kTrain);
  const PrototypeVictim v = BuildPrototypeVictim(train, store, {0.3, 0.5});
  ASSERT_EQ(v.prototypes().size(), 1u);
  EXPECT_EQ(v.prototypes().at("c"), (Vector{0.6, 0.8}));
}

TEST(BuildPrototypeVictimTest, OppositeEntitiesAreDegenerate) {
  auto store = MakeStore(2, {{"e", {1, 0}}, {"f", {-1, 0}}});
  const Corpus train({ColumnTable("t", "h", {"e", "f"}, {"c"})}, Split::kTrain);
  EXPECT_THROW(BuildPrototypeVictim(train, store, {0.3, 0.5}),
               std::invalid_argument);
}

TEST(BuildPrototypeVictimTest, ClassWithoutEntitiesFails) {
  auto store = MakeStore(2, {{"e", {1, 0}}});
  const Corpus train({ColumnTable("t", "h", {"[MASK]"}, {"c"})}, Split::kTrain);
  EXPECT_THROW(BuildPrototypeVictim(train, store, {0.3, 0.5}),
               std::invalid_argument);
}

TEST(BuildPrototypeVictimTest, MissingEmbeddingSkippedOrFatal) {
  auto store = MakeStore(2, {{"e", {1, 0}}});
  const Corpus train({ColumnTable("t", "h", {"e", "ghost"}, {"c"})},
                     Split::kTrain);
  const PrototypeVictim v = BuildPrototypeVictim(train, store, {0.3, 0.5});
  EXPECT_EQ(v.skipped_mentions(), 1u);
  EXPECT_THROW(
      BuildPrototypeVictim(train, store, {0.3, 0.5, MissingEmbedding::kFail}),
      std::invalid_argument);
}

TEST(BuildPrototypeVictimTest, FixturePrototypesTrackCentroids) {
  const FixtureData& fx = testing::DefaultFixture();
  auto store = std::make_shared<const EmbeddingStore>(fx.embeddings);
  const PrototypeVictim v = BuildPrototypeVictim(fx.train, store, {0.3, 0.5});
  ASSERT_EQ(v.prototypes().size(), 20u);
  for (const FixtureClassInfo& c : fx.classes) {
    const Vector& p = v.prototypes().at(c.name);
    EXPECT_NEAR(Norm(p), 1.0, 1e-12);
    EXPECT_GE(CosineSimilarity(p, c.centroid), 0.9) << c.name;
  }
}

TEST(PrototypeModelTest, SaveLoadRoundTrip) {
  const FixtureData& fx = testing::DefaultFixture();
  const auto dir = testing::ScratchDir("model");
  WriteEmbeddingsFile(fx.embeddings, dir / "emb.txt");
  auto store = std::make_shared<const EmbeddingStore>(
      LoadEmbeddingsFile(dir / "emb.txt"));
  const PrototypeVictim v =
      BuildPrototypeVictim(fx.train, store, {0.3, fx.threshold});
  SavePrototypeModel(v, dir / "victim.json", dir / "emb.txt");
  EXPECT_EQ(PrototypeModelEmbeddings(dir / "victim.json"), dir / "emb.txt");
  const PrototypeVictim loaded = LoadPrototypeModel(dir / "victim.json");
  EXPECT_EQ(loaded.prototypes(), v.prototypes());
  EXPECT_EQ(loaded.threshold(), v.threshold());
  EXPECT_EQ(loaded.options().header_weight, 0.3);
  for (const Table& t : fx.test.tables()) {
    for (const auto& [col, cls] : t.annotations()) {
      EXPECT_EQ(loaded.PredictLogits(t, col, v.vocabulary()),
                v.PredictLogits(t, col, v.vocabulary()));
    }
  }
}

TEST(PrototypeModelTest, LoadErrors) {
  const auto dir = testing::ScratchDir("bad");
  EXPECT_THROW(LoadPrototypeModel(dir / "absent.json"), InputError);
  {
    std::ofstream(dir / "bad.json") << R"({"format":"other"})";
  }
  EXPECT_THROW(LoadPrototypeModel(dir / "bad.json"), InputError);
}

// Property: predictions are exactly the classes whose own logit clears tau.
TEST(PrototypeVictimProperty, PredictClassesMatchesPerClassLogits) {
  const FixtureData& fx = testing::DefaultFixture();
  auto store = std::make_shared<const EmbeddingStore>(fx.embeddings);
  const PrototypeVictim v =
      BuildPrototypeVictim(fx.train, store, {0.3, fx.threshold});
  for (const Table& t : fx.test.tables()) {
    for (const auto& [col, cls] : t.annotations()) {
      PredictionSet expected;
      for (const std::string& c : v.vocabulary()) {
        const std::vector<std::string> one{c};
        if (v.PredictLogits(t, col, one).scores[0] >= v.threshold()) {
          expected.insert(c);
        }
      }
      EXPECT_EQ(v.PredictClasses(t, col), expected);
      EXPECT_EQ(v.PredictClasses(t, col), v.PredictClasses(t, col));
    }
  }
}

// With w_h = 0 the logit is a cosine to the normalized entity mean, so
// masking a below-mean entity can still lower it.
TEST(PrototypeVictimTest, MaskingBelowMeanEntityCanLowerLogit) {
  auto store =
      MakeStore(2, {{"x", {1, 0}}, {"y", {0, 1}}, {"z", {0.1, -0.995}}});
  const PrototypeVictim v({{"A", {1, 0}}}, store, {0.0, 0.5});
  const Table t = ColumnTable("t", "h", {"x", "y", "z"}, {"A"});
  const std::vector<std::string> req{"A"};
  // z has cosine 0.1, below the column mean of about 0.37.
  const double full = v.PredictLogits(t, 0, req).scores[0];
  const double masked =
      v.PredictLogits(MaskEntity(t, {"t", 3, 0}), 0, req).scores[0];
  EXPECT_GT(full, 0.99);
  EXPECT_NEAR(masked, 1 / std::sqrt(2.0), 1e-12);
}

// Property (w_h = 0): masking an entity whose cosine to the prototype is
// below the column's mean cosine never lowers logit * |entity mean|, which
// is the mean cosine of the remaining entities.
TEST(PrototypeVictimProperty, MaskingBelowMeanEntityNeverLowersMeanAlignment) {
  const FixtureData& fx = testing::DefaultFixture();
  auto store = std::make_shared<const EmbeddingStore>(fx.embeddings);
  const PrototypeVictim v = BuildPrototypeVictim(fx.train, store, {0.0, 0.5});
  auto mean_norm = [&](const Table& t, int col) {
    Vector m(store->dimension(), 0.0);
    int n = 0;
    for (const auto& [ref, s] : Column(t, col)) {
      if (IsMasked(s)) continue;
      const Vector& e = *store->Find(s);
      for (std::size_t k = 0; k < m.size(); ++k) m[k] += e[k];
      ++n;
    }
    for (double& x : m) x /= n;
    return Norm(m);
  };
  int checked = 0, logit_drops = 0;
  for (const Corpus* corpus : {&fx.train, &fx.test}) {
    for (const Table& t : corpus->tables()) {
      for (const auto& [col, classes] : t.annotations()) {
        const std::string& c = classes.front();
        const Vector& proto = v.prototypes().at(c);
        const auto cells = Column(t, col);
        double mean_cos = 0;
        for (const auto& [ref, s] : cells) {
          mean_cos += Dot(*store->Find(s), proto);
        }
        mean_cos /= cells.size();
        const std::vector<std::string> req{c};
        const double full = v.PredictLogits(t, col, req).scores[0];
        for (const auto& [ref, s] : cells) {
          if (Dot(*store->Find(s), proto) >= mean_cos) continue;
          const Table m = MaskEntity(t, ref);
          const double masked = v.PredictLogits(m, col, req).scores[0];
          EXPECT_GE(masked * mean_norm(m, col),
                    full * mean_norm(t, col) - 1e-12)
              << t.id() << " " << ref.row;
          logit_drops += masked < full;
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 1000);
  RecordProperty("logit_drops", logit_drops);
}

}  // namespace
}  // namespace tabattack
