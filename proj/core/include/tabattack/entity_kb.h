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

#ifndef TABATTACK_ENTITY_KB_H_
#define TABATTACK_ENTITY_KB_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tabattack/embedding_store.h"
#include "tabattack/table.h"
#include "tabattack/vector_math.h"

namespace tabattack {

using SurfaceSet = std::set<std::string, std::less<>>;

struct EntityRecord {
  std::string surface;
  std::string cls;   // most specific class
  Vector embedding;  // unit norm

  friend bool operator==(const EntityRecord&, const EntityRecord&) = default;
};

// Class-indexed entity pools A_c. Within a pool surfaces are unique and keep
// first-seen corpus order (table order, then column, then row).
class EntityKB {
 public:
  EntityKB(int dimension, Split split) : dimension_(dimension), split_(split) {}

  // Appends `record` to its class pool. Returns false (and ignores it) when
  // the surface is already pooled under that class.
  bool Add(EntityRecord record);

  bool has_class(std::string_view cls) const;
  // Throws UnknownClassError.
  const std::vector<EntityRecord>& pool(std::string_view cls) const;
  const EntityRecord* Find(std::string_view cls,
                           std::string_view surface) const;
  std::vector<std::string> classes() const;

  int dimension() const { return dimension_; }
  Split split() const { return split_; }
  std::size_t size() const;

  // Body cells of annotated columns whose entity had no embedding.
  std::size_t skipped_mentions() const { return skipped_mentions_; }
  void add_skipped_mention() { ++skipped_mentions_; }

 private:
  struct Pool {
    std::vector<EntityRecord> records;
    std::map<std::string, std::size_t, std::less<>> index;
  };

  int dimension_;
  Split split_;
  std::map<std::string, Pool, std::less<>> pools_;
  std::size_t skipped_mentions_ = 0;
};

// Pools every distinct entity of every annotated column under the column's
// most-specific class. Masked cells are ignored; entities without an
// embedding are skipped and counted. Throws std::invalid_argument for an
// empty corpus or when no entity resolves.
EntityKB BuildKb(const Corpus& corpus, const EmbeddingStore& embeddings);

// A_c(test) minus every surface in A_c(train), in test pool order. Throws
// UnknownClassError when `cls` is not in `test_kb` and EmptyPoolError when
// nothing novel remains.
std::vector<EntityRecord> FilteredPool(const EntityKB& test_kb,
                                       const EntityKB& train_kb,
                                       std::string_view cls);

// The candidate with the lowest cosine to `anchor`, skipping the anchor's own
// surface and `exclusions`. Ties go to the earliest candidate. Throws
// EmptyPoolError when nothing is left.
const EntityRecord& MostDissimilar(std::span<const EntityRecord> candidates,
                                   const EntityRecord& anchor,
                                   const SurfaceSet& exclusions);
const EntityRecord& MostDissimilar(const EntityKB& kb, std::string_view cls,
                                   const EntityRecord& anchor,
                                   const SurfaceSet& exclusions);

// Highest-cosine token other than `word` and `exclusions`, ties broken by
// lexicographic order. nullopt when `word` is out of vocabulary or no other
// token qualifies.
std::optional<std::string> NearestSynonym(const EmbeddingStore& store,
                                          std::string_view word,
                                          const SurfaceSet& exclusions = {});

}  // namespace tabattack

#endif  // TABATTACK_ENTITY_KB_H_
