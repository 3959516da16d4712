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

#include <benchmark/benchmark.h>

#include <memory>

#include "tabattack/attack.h"
#include "tabattack/entity_kb.h"
#include "tabattack/fixtures.h"
#include "tabattack/prototype_victim.h"
#include "tabattack/sweep.h"

namespace tabattack {
namespace {

struct Bench {
  FixtureData fx = GenerateFixture(FixtureSpec{});
  std::shared_ptr<const EmbeddingStore> store =
      std::make_shared<const EmbeddingStore>(fx.embeddings);
  PrototypeVictim victim =
      BuildPrototypeVictim(fx.train, store, {0.3, fx.threshold});
  std::shared_ptr<const EntityKB> test_kb =
      std::make_shared<const EntityKB>(BuildKb(fx.test, *store));
  CandidatePools pools{
      test_kb, std::make_shared<const EntityKB>(BuildKb(fx.train, *store)),
      store};
};

const Bench& Shared() {
  static const Bench* b = new Bench;
  return *b;
}

void BM_PredictLogits(benchmark::State& state) {
  const Bench& b = Shared();
  const Table& t = b.fx.test.tables().front();
  const auto& vocab = b.victim.vocabulary();
  for (auto _ : state) {
    benchmark::DoNotOptimize(b.victim.PredictLogits(t, 0, vocab));
  }
}
BENCHMARK(BM_PredictLogits);

void BM_ScoreColumn(benchmark::State& state) {
  const Bench& b = Shared();
  const Table& t = b.fx.test.tables().front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ScoreColumn(b.victim, t, 0));
  }
  state.SetItemsProcessed(state.iterations() * t.num_rows());
}
BENCHMARK(BM_ScoreColumn);

void BM_MostDissimilar(benchmark::State& state) {
  const Bench& b = Shared();
  const std::string cls = b.test_kb->classes().front();
  const auto& pool = b.test_kb->pool(cls);
  const EntityRecord& anchor = pool.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(MostDissimilar(pool, anchor, {}));
  }
  state.SetItemsProcessed(state.iterations() * pool.size());
}
BENCHMARK(BM_MostDissimilar);

void BM_EntitySwapAttack(benchmark::State& state) {
  const Bench& b = Shared();
  const Table& t = b.fx.test.tables().front();
  AttackConfig config;
  config.p = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(EntitySwapAttack(b.victim, t, 0, config, b.pools));
  }
}
BENCHMARK(BM_EntitySwapAttack)->Arg(20)->Arg(100);

void BM_Sweep(benchmark::State& state) {
  const Bench& b = Shared();
  SweepSpec spec;
  spec.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunSweep(spec, b.fx.test, b.victim, b.pools));
  }
}
BENCHMARK(BM_Sweep)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tabattack

BENCHMARK_MAIN();
