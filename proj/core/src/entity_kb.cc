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

#include "tabattack/entity_kb.h"

#include <stdexcept>

#include "tabattack/errors.h"

namespace tabattack {

bool EntityKB::Add(EntityRecord record) {
  if (record.surface.empty() || record.cls.empty()) {
    throw std::invalid_argument("entity record needs a surface and a class");
  }
  if (static_cast<int>(record.embedding.size()) != dimension_) {
    throw std::invalid_argument("entity '" + record.surface +
                                "' has the wrong embedding dimension");
  }
  auto it = pools_.find(record.cls);
  if (it == pools_.end()) it = pools_.emplace(record.cls, Pool{}).first;
  Pool& pool = it->second;
  if (!pool.index.emplace(record.surface, pool.records.size()).second) {
    return false;
  }
  pool.records.push_back(std::move(record));
  return true;
}

bool EntityKB::has_class(std::string_view cls) const {
  return pools_.find(cls) != pools_.end();
}

const std::vector<EntityRecord>& EntityKB::pool(std::string_view cls) const {
  auto it = pools_.find(cls);
  if (it == pools_.end()) throw UnknownClassError(std::string(cls));
  return it->second.records;
}

const EntityRecord* EntityKB::Find(std::string_view cls,
                                   std::string_view surface) const {
  auto it = pools_.find(cls);
  if (it == pools_.end()) return nullptr;
  auto hit = it->second.index.find(surface);
  if (hit == it->second.index.end()) return nullptr;
  return &it->second.records[hit->second];
}

std::vector<std::string> EntityKB::classes() const {
  std::vector<std::string> out;
  out.reserve(pools_.size());
  for (const auto& [cls, pool] : pools_) out.push_back(cls);
  return out;
}

std::size_t EntityKB::size() const {
  std::size_t n = 0;
  for (const auto& [cls, pool] : pools_) n += pool.records.size();
  return n;
}

EntityKB BuildKb(const Corpus& corpus, const EmbeddingStore& embeddings) {
  if (corpus.empty())
    throw std::invalid_argument(
        "cannot build a KB from an "
        "empty corpus");
  EntityKB kb(embeddings.dimension(), corpus.split());
  for (const Table& table : corpus.tables()) {
    for (const auto& [col, classes] : table.annotations()) {
      const std::string& cls = classes.front();
      for (int row = 1; row <= table.num_rows(); ++row) {
        const std::string& surface = table.cell(row, col);
        if (surface.empty() || IsMasked(surface)) continue;
        if (kb.Find(cls, surface) != nullptr) continue;
        const Vector* v = embeddings.Find(surface);
        if (v == nullptr) {
          kb.add_skipped_mention();
          continue;
        }
        kb.Add(EntityRecord{surface, cls, *v});
      }
    }
  }
  if (kb.size() == 0) {
    throw std::invalid_argument("no corpus entity has an embedding");
  }
  return kb;
}

std::vector<EntityRecord> FilteredPool(const EntityKB& test_kb,
                                       const EntityKB& train_kb,
                                       std::string_view cls) {
  const auto& test_pool = test_kb.pool(cls);
  std::vector<EntityRecord> out;
  for (const EntityRecord& r : test_pool) {
    if (train_kb.Find(cls, r.surface) == nullptr) out.push_back(r);
  }
  if (out.empty()) throw EmptyPoolError(std::string(cls));
  return out;
}

const EntityRecord& MostDissimilar(std::span<const EntityRecord> candidates,
                                   const EntityRecord& anchor,
                                   const SurfaceSet& exclusions) {
  const EntityRecord* best = nullptr;
  double best_cos = 0.0;
  for (const EntityRecord& c : candidates) {
    if (c.surface == anchor.surface || exclusions.contains(c.surface)) {
      continue;
    }
    const double cos = CosineSimilarity(anchor.embedding, c.embedding);
    if (best == nullptr || cos < best_cos) {
      best = &c;
      best_cos = cos;
    }
  }
  if (best == nullptr) throw EmptyPoolError(anchor.cls);
  return *best;
}

const EntityRecord& MostDissimilar(const EntityKB& kb, std::string_view cls,
                                   const EntityRecord& anchor,
                                   const SurfaceSet& exclusions) {
  return MostDissimilar(kb.pool(cls), anchor, exclusions);
}

std::optional<std::string> NearestSynonym(const EmbeddingStore& store,
                                          std::string_view word,
                                          const SurfaceSet& exclusions) {
  const Vector* target = store.Find(word);
  if (target == nullptr) return std::nullopt;
  std::optional<std::size_t> best;
  double best_cos = 0.0;
  for (std::size_t i = 0; i < store.size(); ++i) {
    const std::string& token = store.tokens()[i];
    if (token == word || exclusions.contains(token)) continue;
    const double cos = CosineSimilarity(*target, store.vector(i));
    if (!best || cos > best_cos ||
        (cos == best_cos && token < store.tokens()[*best])) {
      best = i;
      best_cos = cos;
    }
  }
  if (!best) return std::nullopt;
  return store.tokens()[*best];
}

}  // namespace tabattack
