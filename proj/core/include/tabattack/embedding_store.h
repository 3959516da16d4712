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

#ifndef TABATTACK_EMBEDDING_STORE_H_
#define TABATTACK_EMBEDDING_STORE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tabattack/vector_math.h"

namespace tabattack {

// Exact-string token -> unit-norm vector lookup of a fixed dimension.
// Tokens keep their insertion order, which is also the file order.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(int dimension);

  // Normalizes and stores `v`. Throws std::invalid_argument on a dimension
  // mismatch, a duplicate token, an empty token or a zero vector.
  void Add(std::string token, std::span<const double> v);

  // nullptr when the token is absent.
  const Vector* Find(std::string_view token) const;
  bool Contains(std::string_view token) const { return Find(token) != nullptr; }

  int dimension() const { return dimension_; }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const Vector& vector(std::size_t index) const { return vectors_[index]; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  int dimension_;
  std::vector<std::string> tokens_;
  std::vector<Vector> vectors_;
  std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
};

// Text format: first line `count d`, then `token<TAB>v1 v2 ... vd` per line.
// Throws InputError naming the offending token or line.
EmbeddingStore LoadEmbeddings(std::istream& in,
                              const std::string& source = "<stream>");
EmbeddingStore LoadEmbeddingsFile(const std::filesystem::path& path);

void WriteEmbeddings(const EmbeddingStore& store, std::ostream& out);
void WriteEmbeddingsFile(const EmbeddingStore& store,
                         const std::filesystem::path& path);

}  // namespace tabattack

#endif  // TABATTACK_EMBEDDING_STORE_H_
