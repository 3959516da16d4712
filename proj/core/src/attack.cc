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

#include "tabattack/attack.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tabattack/errors.h"

namespace tabattack {
namespace {

std::string_view Name(bool first, std::string_view a, std::string_view b) {
  return first ? a : b;
}

void PartialShuffle(std::vector<int>& items, int k, Rng& rng) {
  const int n = static_cast<int>(items.size());
  for (int i = 0; i < k && i < n - 1; ++i) {
    const int j = i + static_cast<int>(UniformIndex(rng, n - i));
    std::swap(items[i], items[j]);
  }
}

}  // namespace

std::string_view SelectionName(Selection s) {
  return Name(s == Selection::kImportance, "importance", "random");
}
std::string_view SamplingName(Sampling s) {
  return Name(s == Sampling::kSimilarity, "similarity", "random");
}
std::string_view PoolName(PoolKind p) {
  return Name(p == PoolKind::kTest, "test", "filtered");
}

Selection ParseSelection(std::string_view name) {
  if (name == "importance") return Selection::kImportance;
  if (name == "random") return Selection::kRandom;
  throw std::invalid_argument("unknown selection '" + std::string(name) + "'");
}
Sampling ParseSampling(std::string_view name) {
  if (name == "similarity") return Sampling::kSimilarity;
  if (name == "random") return Sampling::kRandom;
  throw std::invalid_argument("unknown sampling '" + std::string(name) + "'");
}
PoolKind ParsePool(std::string_view name) {
  if (name == "test") return PoolKind::kTest;
  if (name == "filtered") return PoolKind::kFiltered;
  throw std::invalid_argument("unknown pool '" + std::string(name) + "'");
}

void AttackConfig::Validate() const {
  if (p < 1 || p > 100) {
    throw std::invalid_argument("perturbation percentage " + std::to_string(p) +
                                " outside [1, 100]");
  }
}

int KeyCount(int p, int n) { return (p * n + 99) / 100; }

CandidatePools::CandidatePools(std::shared_ptr<const EntityKB> test_kb,
                               std::shared_ptr<const EntityKB> train_kb,
                               std::shared_ptr<const EmbeddingStore> anchors)
    : test_kb_(std::move(test_kb)),
      train_kb_(std::move(train_kb)),
      anchors_(std::move(anchors)) {
  if (!test_kb_) throw std::invalid_argument("candidate pools need a test KB");
  if (train_kb_) {
    for (const std::string& cls : test_kb_->classes()) {
      std::vector<EntityRecord> pool;
      try {
        pool = FilteredPool(*test_kb_, *train_kb_, cls);
      } catch (const EmptyPoolError&) {
      }
      filtered_.emplace(cls, std::move(pool));
    }
  }
}

std::span<const EntityRecord> CandidatePools::Pool(std::string_view cls,
                                                   PoolKind kind) const {
  if (kind == PoolKind::kTest) return test_kb_->pool(cls);
  if (!train_kb_) {
    throw std::logic_error("filtered pool requested without a train KB");
  }
  auto it = filtered_.find(cls);
  if (it == filtered_.end()) throw UnknownClassError(std::string(cls));
  return it->second;
}

bool CandidatePools::FilteredPoolEmpty(std::string_view cls) const {
  return Pool(cls, PoolKind::kFiltered).empty();
}

std::optional<EntityRecord> CandidatePools::Anchor(
    std::string_view cls, const std::string& surface) const {
  if (const EntityRecord* r = test_kb_->Find(cls, surface)) return *r;
  if (anchors_) {
    if (const Vector* v = anchors_->Find(surface)) {
      return EntityRecord{surface, std::string(cls), *v};
    }
  }
  return std::nullopt;
}

double ImportanceScore(const Victim& victim, const Table& table, int col,
                       const CellRef& cell,
                       std::span<const std::string> gt_classes) {
  if (cell.col != col) {
    throw std::invalid_argument("cell is not in the scored column");
  }
  if (gt_classes.empty()) {
    throw std::invalid_argument("importance needs ground-truth classes");
  }
  const LogitVector present = victim.PredictLogits(table, col, gt_classes);
  const LogitVector masked =
      victim.PredictLogits(MaskEntity(table, cell), col, gt_classes);
  double best = present.scores[0] - masked.scores[0];
  for (std::size_t k = 1; k < gt_classes.size(); ++k) {
    best = std::max(best, present.scores[k] - masked.scores[k]);
  }
  return best;
}

std::vector<ScoredCell> ScoreColumn(const Victim& victim, const Table& table,
                                    int col) {
  const auto& gt = table.classes(col);
  std::vector<ScoredCell> out;
  for (auto& [ref, value] : Column(table, col)) {
    if (IsMasked(value)) continue;
    const double s = ImportanceScore(victim, table, col, ref, gt);
    out.push_back(ScoredCell{std::move(ref), s});
  }
  return out;
}

Rng SelectionRng(uint64_t seed, const std::string& table_id, int col) {
  const uint64_t column_seed =
      HashCombine(HashCombine(seed, table_id), static_cast<uint64_t>(col));
  return Rng(HashCombine(column_seed, std::string_view("select")));
}

Rng SamplingRng(uint64_t seed, const std::string& table_id, int col) {
  const uint64_t column_seed =
      HashCombine(HashCombine(seed, table_id), static_cast<uint64_t>(col));
  return Rng(HashCombine(column_seed, std::string_view("sample")));
}

std::vector<CellRef> SelectFromScores(std::span<const ScoredCell> scores,
                                      int p) {
  std::vector<ScoredCell> sorted(scores.begin(), scores.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ScoredCell& a, const ScoredCell& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.cell.row < b.cell.row;
                   });
  const int k = std::min<int>(KeyCount(p, static_cast<int>(sorted.size())),
                              static_cast<int>(sorted.size()));
  std::vector<CellRef> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.push_back(sorted[i].cell);
  return out;
}

std::vector<CellRef> SelectRandom(const Table& table, int col, int p,
                                  Rng& rng) {
  std::vector<int> rows;
  for (int row = 1; row <= table.num_rows(); ++row) {
    if (!IsMasked(table.cell(row, col))) rows.push_back(row);
  }
  const int k = std::min<int>(KeyCount(p, static_cast<int>(rows.size())),
                              static_cast<int>(rows.size()));
  PartialShuffle(rows, k, rng);
  std::vector<CellRef> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.push_back(CellRef{table.id(), rows[i], col});
  return out;
}

std::vector<CellRef> SelectKeyEntities(const Victim& victim, const Table& table,
                                       int col, const AttackConfig& config) {
  config.Validate();
  if (config.selection == Selection::kImportance) {
    return SelectFromScores(ScoreColumn(victim, table, col), config.p);
  }
  Rng rng = SelectionRng(config.seed, table.id(), col);
  return SelectRandom(table, col, config.p, rng);
}

std::optional<EntityRecord> SampleAdversarial(
    std::span<const EntityRecord> candidates, const EntityRecord& anchor,
    const AttackConfig& config, const SurfaceSet& used, Rng& rng) {
  static const SurfaceSet kNone;
  const SurfaceSet& exclusions = config.allow_duplicates ? kNone : used;
  if (config.sampling == Sampling::kSimilarity) {
    try {
      return MostDissimilar(candidates, anchor, exclusions);
    } catch (const EmptyPoolError&) {
      return std::nullopt;
    }
  }
  std::vector<const EntityRecord*> eligible;
  eligible.reserve(candidates.size());
  for (const EntityRecord& c : candidates) {
    if (c.surface == anchor.surface || exclusions.contains(c.surface)) {
      continue;
    }
    eligible.push_back(&c);
  }
  if (eligible.empty()) return std::nullopt;
  return *eligible[UniformIndex(rng, eligible.size())];
}

AttackResult EntitySwapAttack(const Victim& victim, const Table& table, int col,
                              const AttackConfig& config,
                              const CandidatePools& pools,
                              const AttackCache& cache) {
  config.Validate();
  const std::string& cls = table.most_specific_class(col);
  const auto candidates = pools.Pool(cls, config.pool);

  AttackResult result;
  result.original_table = table;
  result.column = col;
  result.config = config;
  result.pred_before = cache.pred_before != nullptr
                           ? *cache.pred_before
                           : victim.PredictClasses(table, col);

  std::vector<CellRef> selected;
  if (config.selection == Selection::kImportance) {
    result.scores = cache.scores != nullptr ? *cache.scores
                                            : ScoreColumn(victim, table, col);
    selected = SelectFromScores(result.scores, config.p);
  } else {
    Rng select_rng = SelectionRng(config.seed, table.id(), col);
    selected = SelectRandom(table, col, config.p, select_rng);
  }
  result.selected = static_cast<int>(selected.size());

  Rng sample_rng = SamplingRng(config.seed, table.id(), col);
  SurfaceSet used;
  Table adversarial = table;
  for (const CellRef& ref : selected) {
    const std::string& original = table.cell(ref);
    std::optional<EntityRecord> anchor;
    if (config.sampling == Sampling::kSimilarity) {
      anchor = pools.Anchor(cls, original);
    } else {
      anchor = EntityRecord{original, cls, {}};
    }
    std::optional<EntityRecord> pick;
    if (anchor) {
      pick = SampleAdversarial(candidates, *anchor, config, used, sample_rng);
    }
    if (!pick) {
      ++result.skips;
      continue;
    }
    std::optional<double> score;
    for (const ScoredCell& s : result.scores) {
      if (s.cell == ref) score = s.score;
    }
    adversarial = SwapEntity(adversarial, ref, pick->surface);
    used.insert(pick->surface);
    result.swaps.push_back(EntitySwap{ref, original, pick->surface, score});
  }

  result.pred_after = victim.PredictClasses(adversarial, col);
  result.adversarial_table = std::move(adversarial);
  result.success = std::none_of(
      result.pred_before.begin(), result.pred_before.end(),
      [&](const std::string& c) { return result.pred_after.contains(c); });
  return result;
}

HeaderAttackResult HeaderSynonymAttack(const Table& table, int p, uint64_t seed,
                                       const EmbeddingStore& synonyms) {
  if (p < 1 || p > 100) {
    throw std::invalid_argument("perturbation percentage outside [1, 100]");
  }
  std::vector<int> cols(table.num_cols());
  std::iota(cols.begin(), cols.end(), 0);
  const int k = KeyCount(p, table.num_cols());
  Rng rng(
      HashCombine(HashCombine(seed, table.id()), std::string_view("header")));
  PartialShuffle(cols, k, rng);

  HeaderAttackResult result;
  result.adversarial_table = table;
  for (int i = 0; i < k; ++i) {
    const int col = cols[i];
    result.selected.push_back(col);
    const std::string& original = table.header(col);
    auto synonym = NearestSynonym(synonyms, original);
    if (!synonym) {
      ++result.skips;
      continue;
    }
    result.adversarial_table =
        result.adversarial_table.WithHeader(col, *synonym);
    result.swaps.push_back(HeaderSwap{col, original, *synonym});
  }
  return result;
}

AuditOutcome ImperceptibilityAudit(const AttackResult& result,
                                   const EntityKB& kb) {
  const std::string& cls =
      result.original_table.most_specific_class(result.column);
  for (const EntitySwap& swap : result.swaps) {
    if (swap.cell.col != result.column ||
        kb.Find(cls, swap.adversarial) == nullptr) {
      return AuditOutcome{false, swap.adversarial};
    }
  }
  return AuditOutcome{};
}

nlohmann::json ConfigToJson(const AttackConfig& config) {
  return nlohmann::json{{"p", config.p},
                        {"selection", SelectionName(config.selection)},
                        {"sampling", SamplingName(config.sampling)},
                        {"pool", PoolName(config.pool)},
                        {"seed", config.seed},
                        {"allow_duplicates", config.allow_duplicates}};
}

nlohmann::json AttackResultToJson(const AttackResult& result) {
  nlohmann::json swaps = nlohmann::json::array();
  for (const EntitySwap& s : result.swaps) {
    swaps.push_back(
        {{"row", s.cell.row},
         {"col", s.cell.col},
         {"before", s.original},
         {"after", s.adversarial},
         {"score", s.score ? nlohmann::json(*s.score) : nlohmann::json()}});
  }
  return nlohmann::json{{"table_id", result.original_table.id()},
                        {"column", result.column},
                        {"config", ConfigToJson(result.config)},
                        {"swaps", std::move(swaps)},
                        {"pred_before", result.pred_before},
                        {"pred_after", result.pred_after},
                        {"success", result.success},
                        {"abstention", result.abstention()},
                        {"selected", result.selected},
                        {"skips", result.skips}};
}

}  // namespace tabattack
