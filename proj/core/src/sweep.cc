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

#include "tabattack/sweep.h"

#include <algorithm>
#include <iostream>
#include <stdexcept>

#include "tabattack/errors.h"

namespace tabattack {
namespace {

struct ColumnRef {
  const Table* table;
  int col;
};

std::vector<ColumnRef> AnnotatedColumns(const Corpus& corpus) {
  std::vector<ColumnRef> out;
  for (const Table& t : corpus.tables()) {
    for (const auto& [col, classes] : t.annotations()) {
      out.push_back(ColumnRef{&t, col});
    }
  }
  return out;
}

std::vector<ClassSet> GoldSets(const std::vector<ColumnRef>& columns) {
  std::vector<ClassSet> gold;
  gold.reserve(columns.size());
  for (const ColumnRef& c : columns) {
    const auto& classes = c.table->classes(c.col);
    gold.emplace_back(classes.begin(), classes.end());
  }
  return gold;
}

bool Intersects(const PredictionSet& a, const ClassSet& b) {
  return std::any_of(a.begin(), a.end(),
                     [&](const std::string& c) { return b.contains(c); });
}

void FillMetrics(MetricsRow& row, const std::vector<PredictionSet>& preds,
                 const std::vector<ClassSet>& gold) {
  row.counts = CountDecisions(preds, gold);
  row.per_class = CountDecisionsByClass(preds, gold);
  const Prf m = PrfFromCounts(row.counts);
  row.precision = m.precision;
  row.recall = m.recall;
  row.f1 = m.f1;
  row.success_rate =
      row.attacked > 0 ? static_cast<double>(row.successes) / row.attacked : 0;
  row.skip_rate =
      row.selected > 0 ? static_cast<double>(row.skips) / row.selected : 0;
}

std::vector<PredictionSet> Predict(const std::vector<ColumnRef>& columns,
                                   const Victim& victim, int threads) {
  std::vector<PredictionSet> preds(columns.size());
  ParallelFor(columns.size(), threads, [&](std::size_t i) {
    preds[i] = victim.PredictClasses(*columns[i].table, columns[i].col);
  });
  return preds;
}

double Drop(double baseline, double value) {
  return baseline > 0.0 ? RelativeDrop(baseline, value) : 0.0;
}

}  // namespace

void SweepSpec::Validate() const {
  if (ps.empty() || selections.empty() || samplings.empty() || pools.empty() ||
      seeds.empty()) {
    throw std::invalid_argument("sweep lists must be non-empty");
  }
  for (int p : ps) {
    if (p < 1 || p > 100) {
      throw std::invalid_argument("perturbation percentage " +
                                  std::to_string(p) + " outside [1, 100]");
    }
  }
}

void ApplyDrops(std::vector<MetricsRow>& rows) {
  if (rows.empty() || !rows.front().is_baseline()) {
    throw std::invalid_argument("metrics rows must start with the baseline");
  }
  const MetricsRow base = rows.front();
  for (MetricsRow& row : rows) {
    row.drop_f1_pct = Drop(base.f1, row.f1);
    row.drop_p_pct = Drop(base.precision, row.precision);
    row.drop_r_pct = Drop(base.recall, row.recall);
  }
}

MetricsRow EvaluateCorpus(const Corpus& corpus, const Victim& victim,
                          int threads) {
  const auto columns = AnnotatedColumns(corpus);
  MetricsRow row;
  FillMetrics(row, Predict(columns, victim, threads), GoldSets(columns));
  return row;
}

std::vector<MetricsRow> RunSweep(const SweepSpec& spec, const Corpus& test,
                                 const Victim& victim,
                                 const CandidatePools& pools,
                                 const AttackSink& sink) {
  spec.Validate();
  const auto columns = AnnotatedColumns(test);
  const auto gold = GoldSets(columns);
  const auto before = Predict(columns, victim, spec.threads);

  std::vector<MetricsRow> rows;
  MetricsRow baseline;
  FillMetrics(baseline, before, gold);
  rows.push_back(baseline);

  std::vector<std::size_t> targets;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (!spec.attack_correct_only || Intersects(before[i], gold[i])) {
      targets.push_back(i);
    }
  }

  // Importance scores depend only on the pristine column.
  std::vector<std::vector<ScoredCell>> scores(columns.size());
  if (std::find(spec.selections.begin(), spec.selections.end(),
                Selection::kImportance) != spec.selections.end()) {
    ParallelFor(targets.size(), spec.threads, [&](std::size_t t) {
      const ColumnRef& c = columns[targets[t]];
      scores[targets[t]] = ScoreColumn(victim, *c.table, c.col);
    });
  }

  for (int p : spec.ps) {
    for (Selection selection : spec.selections) {
      for (Sampling sampling : spec.samplings) {
        for (PoolKind pool : spec.pools) {
          for (uint64_t seed : spec.seeds) {
            AttackConfig config{p,    selection, sampling,
                                pool, seed,      spec.allow_duplicates};
            MetricsRow row;
            row.p = p;
            row.selection = SelectionName(selection);
            row.sampling = SamplingName(sampling);
            row.pool = PoolName(pool);
            row.seed = seed;
            std::vector<AttackResult> results(targets.size());
            try {
              ParallelFor(targets.size(), spec.threads, [&](std::size_t t) {
                const std::size_t i = targets[t];
                AttackCache cache{&scores[i], &before[i]};
                results[t] =
                    EntitySwapAttack(victim, *columns[i].table, columns[i].col,
                                     config, pools, cache);
              });
            } catch (const TransportError&) {
              throw;
            } catch (const std::exception& e) {
              std::cerr << "sweep: skipping p=" << p << " " << row.selection
                        << "/" << row.sampling << "/" << row.pool
                        << " seed=" << seed << ": " << e.what() << '\n';
              continue;
            }
            std::vector<PredictionSet> after = before;
            for (std::size_t t = 0; t < targets.size(); ++t) {
              const AttackResult& r = results[t];
              after[targets[t]] = r.pred_after;
              ++row.attacked;
              row.successes += r.success ? 1 : 0;
              row.abstentions += r.abstention() ? 1 : 0;
              row.selected += r.selected;
              row.skips += r.skips;
              if (sink) sink(r);
            }
            FillMetrics(row, after, gold);
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  ApplyDrops(rows);
  return rows;
}

std::vector<MetricsRow> RunHeaderSweep(const HeaderSweepSpec& spec,
                                       const Corpus& test, const Victim& victim,
                                       const EmbeddingStore& synonyms,
                                       const HeaderSink& sink) {
  if (spec.ps.empty() || spec.seeds.empty()) {
    throw std::invalid_argument("sweep lists must be non-empty");
  }
  const auto columns = AnnotatedColumns(test);
  const auto gold = GoldSets(columns);
  const auto before = Predict(columns, victim, spec.threads);

  std::vector<MetricsRow> rows;
  MetricsRow baseline;
  FillMetrics(baseline, before, gold);
  rows.push_back(baseline);

  // Annotated column indices per table, in corpus order.
  std::vector<std::vector<std::size_t>> by_table(test.size());
  {
    std::size_t i = 0;
    for (std::size_t t = 0; t < test.size(); ++t) {
      while (i < columns.size() && columns[i].table == &test.tables()[t]) {
        by_table[t].push_back(i++);
      }
    }
  }

  for (int p : spec.ps) {
    for (uint64_t seed : spec.seeds) {
      MetricsRow row;
      row.p = p;
      row.selection = "random";
      row.sampling = "synonym";
      row.pool = "none";
      row.seed = seed;
      std::vector<HeaderAttackRecord> records(test.size());
      std::vector<PredictionSet> after = before;
      ParallelFor(test.size(), spec.threads, [&](std::size_t t) {
        const Table& table = test.tables()[t];
        records[t] = HeaderAttackRecord{
            table.id(), p, seed, HeaderSynonymAttack(table, p, seed, synonyms)};
        const Table& adv = records[t].result.adversarial_table;
        for (std::size_t i : by_table[t]) {
          if (adv.header(columns[i].col) != table.header(columns[i].col)) {
            after[i] = victim.PredictClasses(adv, columns[i].col);
          }
        }
      });
      for (std::size_t t = 0; t < test.size(); ++t) {
        const HeaderAttackResult& r = records[t].result;
        row.selected += static_cast<int64_t>(r.selected.size());
        row.skips += r.skips;
        for (std::size_t i : by_table[t]) {
          const int col = columns[i].col;
          const bool swapped =
              std::any_of(r.swaps.begin(), r.swaps.end(),
                          [&](const HeaderSwap& s) { return s.col == col; });
          if (!swapped) continue;
          ++row.attacked;
          const bool success = !Intersects(
              before[i], ClassSet(after[i].begin(), after[i].end()));
          row.successes += success ? 1 : 0;
          row.abstentions += success && after[i].empty() ? 1 : 0;
        }
        if (sink) sink(records[t]);
      }
      FillMetrics(row, after, gold);
      rows.push_back(std::move(row));
    }
  }
  ApplyDrops(rows);
  return rows;
}

}  // namespace tabattack
