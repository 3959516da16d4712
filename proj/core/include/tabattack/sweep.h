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

#ifndef TABATTACK_SWEEP_H_
#define TABATTACK_SWEEP_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tabattack/attack.h"
#include "tabattack/metrics.h"
#include "tabattack/parallel.h"

namespace tabattack {

struct SweepSpec {
  std::vector<int> ps{20, 40, 60, 80, 100};
  std::vector<Selection> selections{Selection::kImportance};
  std::vector<Sampling> samplings{Sampling::kSimilarity};
  std::vector<PoolKind> pools{PoolKind::kFiltered};
  std::vector<uint64_t> seeds{0};
  bool allow_duplicates = false;
  // Only columns whose baseline prediction shares a class with the gold
  // annotation are attacked; the rest are scored unperturbed.
  bool attack_correct_only = true;
  int threads = DefaultThreadCount();

  // Throws std::invalid_argument on an empty list or a p outside [1, 100].
  void Validate() const;
};

// One evaluation of the whole test corpus. The baseline row has p = 0, the
// strategy fields "none" and no seed.
struct MetricsRow {
  int p = 0;
  std::string selection = "none";
  std::string sampling = "none";
  std::string pool = "none";
  std::optional<uint64_t> seed;

  double precision = 0.0;  // micro, in [0, 1]
  double recall = 0.0;
  double f1 = 0.0;
  double drop_f1_pct = 0.0;  // RelativeDrop against the baseline row
  double drop_p_pct = 0.0;
  double drop_r_pct = 0.0;
  double success_rate = 0.0;  // successes / attacked
  double skip_rate = 0.0;     // skips / selected

  int64_t attacked = 0;
  int64_t successes = 0;
  int64_t abstentions = 0;
  int64_t selected = 0;
  int64_t skips = 0;
  DecisionCounts counts;
  std::map<std::string, DecisionCounts> per_class;

  bool is_baseline() const { return p == 0; }
};

// Fills the drop fields of every row from the baseline row (rows[0] must be
// it). Drops are 0 when the baseline metric is 0.
void ApplyDrops(std::vector<MetricsRow>& rows);

using AttackSink = std::function<void(const AttackResult&)>;

// Baseline row followed by one row per (p, selection, sampling, pool, seed)
// in that nesting order. Every annotated test column is evaluated. The sink
// sees each AttackResult in a deterministic order. A TransportError aborts
// the sweep; any other error drops only the affected row, with a diagnostic
// on stderr.
std::vector<MetricsRow> RunSweep(const SweepSpec& spec, const Corpus& test,
                                 const Victim& victim,
                                 const CandidatePools& pools,
                                 const AttackSink& sink = {});

struct HeaderSweepSpec {
  std::vector<int> ps{20, 40, 60, 80, 100};
  std::vector<uint64_t> seeds{0};
  int threads = DefaultThreadCount();
};

struct HeaderAttackRecord {
  std::string table_id;
  int p = 0;
  uint64_t seed = 0;
  HeaderAttackResult result;
};
using HeaderSink = std::function<void(const HeaderAttackRecord&)>;

// Header-synonym sweep. Rows use selection "random", sampling "synonym" and
// pool "none"; success counts annotated columns whose header was replaced
// and whose prediction no longer shares a class with the baseline one.
std::vector<MetricsRow> RunHeaderSweep(const HeaderSweepSpec& spec,
                                       const Corpus& test, const Victim& victim,
                                       const EmbeddingStore& synonyms,
                                       const HeaderSink& sink = {});

// Micro P/R/F1 of the victim on every annotated column of `corpus`.
MetricsRow EvaluateCorpus(const Corpus& corpus, const Victim& victim,
                          int threads = DefaultThreadCount());

}  // namespace tabattack

#endif  // TABATTACK_SWEEP_H_
