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

#ifndef TABATTACK_PROTOTYPE_VICTIM_H_
#define TABATTACK_PROTOTYPE_VICTIM_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tabattack/embedding_store.h"
#include "tabattack/victim.h"

namespace tabattack {

enum class MissingEmbedding { kSkip, kFail };

struct PrototypeVictimOptions {
  double header_weight = 0.3;  // in [0, 1)
  double threshold = 0.5;      // in (-1, 1)
  MissingEmbedding missing = MissingEmbedding::kSkip;
};

// Nearest-class-mean reference victim. A column is represented by
//
//   normalize((1 - w_h) * mean(unit entity vectors) + w_h * header vector)
//
// where masked cells (and, under kSkip, cells without an embedding) are left
// out of the mean; an all-masked column contributes a zero mean. The logit of
// class c is the cosine between that representation and c's prototype, and 0
// for every class when the representation is the zero vector.
class PrototypeVictim : public Victim {
 public:
  // Prototypes must be unit norm with the store's dimension.
  PrototypeVictim(std::map<std::string, Vector> prototypes,
                  std::shared_ptr<const EmbeddingStore> embeddings,
                  PrototypeVictimOptions options);

  LogitVector PredictLogits(
      const Table& table, int col,
      std::span<const std::string> classes) const override;
  const std::vector<std::string>& vocabulary() const override {
    return vocabulary_;
  }
  double threshold() const override { return options_.threshold; }

  // normalize((1 - w_h) * entity mean + w_h * header). A column without any
  // usable entity gives w_h * header, unnormalized (zeros without a header).
  Vector ColumnRepresentation(const Table& table, int col) const;

  const std::map<std::string, Vector>& prototypes() const {
    return prototypes_;
  }
  const PrototypeVictimOptions& options() const { return options_; }
  const EmbeddingStore& embeddings() const { return *embeddings_; }
  std::shared_ptr<const EmbeddingStore> shared_embeddings() const {
    return embeddings_;
  }
  int dimension() const { return embeddings_->dimension(); }

  // Train mentions skipped for lack of an embedding during the build.
  std::size_t skipped_mentions() const { return skipped_mentions_; }
  void set_skipped_mentions(std::size_t n) { skipped_mentions_ = n; }

 private:
  std::map<std::string, Vector> prototypes_;
  std::shared_ptr<const EmbeddingStore> embeddings_;
  PrototypeVictimOptions options_;
  std::vector<std::string> vocabulary_;
  std::size_t skipped_mentions_ = 0;
};

// prototype(c) = normalize(mean of the unit embeddings of every train entity
// mention in columns whose most-specific class is c). Throws
// std::invalid_argument for a degenerate (zero-mean) prototype, and for a
// missing embedding under MissingEmbedding::kFail.
PrototypeVictim BuildPrototypeVictim(
    const Corpus& train, std::shared_ptr<const EmbeddingStore> embeddings,
    PrototypeVictimOptions options);

// JSON model file. The embedding file path is stored relative to the model
// file's directory when possible.
void SavePrototypeModel(const PrototypeVictim& victim,
                        const std::filesystem::path& model_path,
                        const std::filesystem::path& embeddings_path);
PrototypeVictim LoadPrototypeModel(const std::filesystem::path& model_path);
// The embedding file a model refers to, resolved against the model's
// directory.
std::filesystem::path PrototypeModelEmbeddings(
    const std::filesystem::path& model_path);

}  // namespace tabattack

#endif  // TABATTACK_PROTOTYPE_VICTIM_H_
