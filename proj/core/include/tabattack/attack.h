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

#ifndef TABATTACK_ATTACK_H_
#define TABATTACK_ATTACK_H_

#include <cstdint>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tabattack/embedding_store.h"
#include "tabattack/entity_kb.h"
#include "tabattack/rng.h"
#include "tabattack/table.h"
#include "tabattack/victim.h"

namespace tabattack {

enum class Selection { kImportance, kRandom };
enum class Sampling { kSimilarity, kRandom };
enum class PoolKind { kTest, kFiltered };

std::string_view SelectionName(Selection s);
std::string_view SamplingName(Sampling s);
std::string_view PoolName(PoolKind p);
Selection ParseSelection(std::string_view name);
Sampling ParseSampling(std::string_view name);
PoolKind ParsePool(std::string_view name);

struct AttackConfig {
  int p = 20;  // percent of body cells to perturb, 1..100
  Selection selection = Selection::kImportance;
  Sampling sampling = Sampling::kSimilarity;
  PoolKind pool = PoolKind::kFiltered;
  uint64_t seed = 0;
  bool allow_duplicates = false;

  // Throws std::invalid_argument when p is outside [1, 100].
  void Validate() const;
};

// ceil(p * n / 100).
int KeyCount(int p, int n);

struct ScoredCell {
  CellRef cell;
  double score = 0.0;
};

struct EntitySwap {
  CellRef cell;
  std::string original;
  std::string adversarial;
  std::optional<double> score;  // set under importance selection
};

struct AttackResult {
  Table original_table;
  Table adversarial_table;
  int column = 0;
  AttackConfig config;
  std::vector<EntitySwap> swaps;
  std::vector<ScoredCell> scores;  // empty under random selection
  PredictionSet pred_before;
  PredictionSet pred_after;
  bool success = false;
  int selected = 0;
  int skips = 0;

  // Success reached because the victim predicts nothing at all afterwards.
  bool abstention() const { return success && pred_after.empty(); }
};

// Adversarial candidate sets: the test KB's class pools and, when a train KB
// is given, the filtered pools (test minus train). Anchor embeddings are
// looked up in the test KB first, then in `anchors` when provided.
class CandidatePools {
 public:
  CandidatePools(std::shared_ptr<const EntityKB> test_kb,
                 std::shared_ptr<const EntityKB> train_kb = nullptr,
                 std::shared_ptr<const EmbeddingStore> anchors = nullptr);

  // Throws UnknownClassError when the class is not in the test KB and
  // std::logic_error for a filtered pool without a train KB. An exhausted
  // filtered pool is returned as an empty span.
  std::span<const EntityRecord> Pool(std::string_view cls, PoolKind kind) const;
  bool FilteredPoolEmpty(std::string_view cls) const;

  // The anchor as an EntityRecord of class `cls`; nullopt without an
  // embedding.
  std::optional<EntityRecord> Anchor(std::string_view cls,
                                     const std::string& surface) const;

  const EntityKB& test_kb() const { return *test_kb_; }
  bool has_train_kb() const { return train_kb_ != nullptr; }

 private:
  std::shared_ptr<const EntityKB> test_kb_;
  std::shared_ptr<const EntityKB> train_kb_;
  std::shared_ptr<const EmbeddingStore> anchors_;
  std::map<std::string, std::vector<EntityRecord>, std::less<>> filtered_;
};

// max over `gt_classes` of (logit with the cell in place - logit with the
// cell masked). Exactly two victim evaluations; the result may be negative.
double ImportanceScore(const Victim& victim, const Table& table, int col,
                       const CellRef& cell,
                       std::span<const std::string> gt_classes);

// Importance of every unmasked body cell of an annotated column, row order.
std::vector<ScoredCell> ScoreColumn(const Victim& victim, const Table& table,
                                    int col);

// Per-column RNG streams derived from (seed, table id, column), so results
// do not depend on scheduling, on p or on the strategy combination.
Rng SelectionRng(uint64_t seed, const std::string& table_id, int col);
Rng SamplingRng(uint64_t seed, const std::string& table_id, int col);

// KeyCount(p, n) cells. Importance: score descending, ties to the lower row.
// Random: uniform without replacement under the selection stream.
std::vector<CellRef> SelectKeyEntities(const Victim& victim, const Table& table,
                                       int col, const AttackConfig& config);
std::vector<CellRef> SelectFromScores(std::span<const ScoredCell> scores,
                                      int p);
std::vector<CellRef> SelectRandom(const Table& table, int col, int p, Rng& rng);

// One adversarial entity for `anchor`, or nullopt (a skip) when no candidate
// survives the exclusions: the anchor itself and, without duplicates, every
// surface in `used`. Similarity mode takes the most dissimilar candidate;
// random mode draws uniformly.
std::optional<EntityRecord> SampleAdversarial(
    std::span<const EntityRecord> candidates, const EntityRecord& anchor,
    const AttackConfig& config, const SurfaceSet& used, Rng& rng);

// Optional precomputed, config-independent inputs. Both must match what the
// attack would compute itself.
struct AttackCache {
  const std::vector<ScoredCell>* scores = nullptr;
  const PredictionSet* pred_before = nullptr;
};

// Two-step entity swap: pick key cells, then swap each with a same-class
// adversarial entity. Throws std::out_of_range for an unannotated column and
// UnknownClassError when the column's class has no pool.
AttackResult EntitySwapAttack(const Victim& victim, const Table& table, int col,
                              const AttackConfig& config,
                              const CandidatePools& pools,
                              const AttackCache& cache = {});

struct HeaderSwap {
  int col = 0;
  std::string original;
  std::string replacement;
};

struct HeaderAttackResult {
  Table adversarial_table;
  std::vector<int> selected;  // columns picked for perturbation
  std::vector<HeaderSwap> swaps;
  int skips = 0;  // picked headers without a synonym
};

// Replaces KeyCount(p, m) uniformly chosen headers by their nearest synonym.
// Body cells are never touched.
HeaderAttackResult HeaderSynonymAttack(const Table& table, int p, uint64_t seed,
                                       const EmbeddingStore& synonyms);

struct AuditOutcome {
  bool passed = true;
  std::string offending;  // first surface that failed, if any
};

// Every adversarial entity must sit in the KB pool of the column's most
// specific class, and every swap must target the attacked column.
AuditOutcome ImperceptibilityAudit(const AttackResult& result,
                                   const EntityKB& kb);

nlohmann::json ConfigToJson(const AttackConfig& config);
// One line of the results file. Tables are not embedded.
nlohmann::json AttackResultToJson(const AttackResult& result);

}  // namespace tabattack

#endif  // TABATTACK_ATTACK_H_
