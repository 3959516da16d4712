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

#include "tabattack/embedding_store.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tabattack/errors.h"

namespace tabattack {

EmbeddingStore::EmbeddingStore(int dimension) : dimension_(dimension) {
  if (dimension <= 0) {
    throw std::invalid_argument("embedding dimension must be positive");
  }
}

void EmbeddingStore::Add(std::string token, std::span<const double> v) {
  if (token.empty()) throw std::invalid_argument("empty token");
  if (static_cast<int>(v.size()) != dimension_) {
    throw std::invalid_argument(
        "token '" + token + "' has " + std::to_string(v.size()) +
        " components, expected " + std::to_string(dimension_));
  }
  if (index_.count(token) > 0) {
    throw std::invalid_argument("duplicate token '" + token + "'");
  }
  Vector unit;
  try {
    // Unit-norm input is kept bit for bit.
    const double norm = Norm(v);
    unit = std::abs(norm - 1.0) <= 1e-15 ? Vector(v.begin(), v.end())
                                         : Normalized(v);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("token '" + token + "' has a zero vector");
  }
  index_.emplace(token, tokens_.size());
  tokens_.push_back(std::move(token));
  vectors_.push_back(std::move(unit));
}

const Vector* EmbeddingStore::Find(std::string_view token) const {
  auto it = index_.find(token);
  return it == index_.end() ? nullptr : &vectors_[it->second];
}

EmbeddingStore LoadEmbeddings(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) {
    throw InputError(source + ": missing `count d` header line");
  }
  std::size_t count = 0;
  int dimension = 0;
  {
    std::istringstream header(line);
    if (!(header >> count >> dimension) || dimension <= 0) {
      throw InputError(source + ":1: malformed header '" + line + "'");
    }
  }
  EmbeddingStore store(dimension);
  int line_no = 1;
  Vector values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    if (tab == std::string::npos) {
      throw InputError(where + "missing tab between token and vector");
    }
    std::string token = line.substr(0, tab);
    values.clear();
    const char* p = line.data() + tab + 1;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p == end) break;
      double x = 0.0;
      auto [next, ec] = std::from_chars(p, end, x);
      if (ec != std::errc()) {
        throw InputError(where + "token '" + token +
                         "' has a non-numeric "
                         "component");
      }
      values.push_back(x);
      p = next;
    }
    try {
      store.Add(std::move(token), values);
    } catch (const std::invalid_argument& e) {
      throw InputError(where + e.what());
    }
  }
  if (store.size() != count) {
    throw InputError(source + ": header declares " + std::to_string(count) +
                     " entries but " + std::to_string(store.size()) +
                     " were read");
  }
  return store;
}

EmbeddingStore LoadEmbeddingsFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open embedding file " + path.string());
  return LoadEmbeddings(in, path.string());
}

void WriteEmbeddings(const EmbeddingStore& store, std::ostream& out) {
  out << store.size() << ' ' << store.dimension() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < store.size(); ++i) {
    out << store.tokens()[i] << '\t';
    const Vector& v = store.vector(i);
    for (std::size_t k = 0; k < v.size(); ++k) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v[k]);
      if (k > 0) out << ' ';
      out.write(buf, end - buf);
    }
    out << '\n';
  }
}

void WriteEmbeddingsFile(const EmbeddingStore& store,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write embedding file " + path.string());
  WriteEmbeddings(store, out);
}

}  // namespace tabattack
