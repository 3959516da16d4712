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

#include "tabattack/prototype_victim.h"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "tabattack/errors.h"

namespace tabattack {
namespace {

constexpr char kModelFormat[] = "tabattack-prototype/1";
constexpr double kUnitTolerance = 1e-9;

std::string_view MissingName(MissingEmbedding m) {
  return m == MissingEmbedding::kSkip ? "skip" : "fail";
}

MissingEmbedding ParseMissing(const std::string& s) {
  if (s == "skip") return MissingEmbedding::kSkip;
  if (s == "fail") return MissingEmbedding::kFail;
  throw InputError("unknown missing-embedding policy '" + s + "'");
}

}  // namespace

PrototypeVictim::PrototypeVictim(
    std::map<std::string, Vector> prototypes,
    std::shared_ptr<const EmbeddingStore> embeddings,
    PrototypeVictimOptions options)
    : prototypes_(std::move(prototypes)),
      embeddings_(std::move(embeddings)),
      options_(options) {
  if (!embeddings_) throw std::invalid_argument("victim needs embeddings");
  if (!(options_.header_weight >= 0.0 && options_.header_weight < 1.0)) {
    throw std::invalid_argument("header weight must lie in [0, 1)");
  }
  if (!(options_.threshold > -1.0 && options_.threshold < 1.0)) {
    throw std::invalid_argument("threshold must lie in (-1, 1)");
  }
  if (prototypes_.empty()) {
    throw std::invalid_argument("victim needs at least one class");
  }
  for (const auto& [cls, proto] : prototypes_) {
    if (static_cast<int>(proto.size()) != embeddings_->dimension()) {
      throw std::invalid_argument("prototype of '" + cls +
                                  "' has the wrong dimension");
    }
    if (std::abs(Norm(proto) - 1.0) > kUnitTolerance) {
      throw std::invalid_argument("prototype of '" + cls +
                                  "' is not unit norm");
    }
    vocabulary_.push_back(cls);
  }
}

Vector PrototypeVictim::ColumnRepresentation(const Table& table,
                                             int col) const {
  const int d = dimension();
  Vector mean(d, 0.0);
  int count = 0;
  for (int row = 1; row <= table.num_rows(); ++row) {
    const std::string& cell = table.cell(row, col);
    if (IsMasked(cell)) continue;
    const Vector* v = embeddings_->Find(cell);
    if (v == nullptr) {
      if (options_.missing == MissingEmbedding::kFail) {
        throw std::invalid_argument("no embedding for entity '" + cell + "'");
      }
      continue;
    }
    for (int k = 0; k < d; ++k) mean[k] += (*v)[k];
    ++count;
  }
  if (count > 0) {
    for (double& x : mean) x /= count;
  }

  const double w = options_.header_weight;
  Vector repr(d, 0.0);
  for (int k = 0; k < d; ++k) repr[k] = (1.0 - w) * mean[k];
  if (w > 0.0) {
    const Vector* h = embeddings_->Find(table.header(col));
    if (h == nullptr && options_.missing == MissingEmbedding::kFail) {
      throw std::invalid_argument("no embedding for header '" +
                                  table.header(col) + "'");
    }
    if (h != nullptr) {
      for (int k = 0; k < d; ++k) repr[k] += w * (*h)[k];
    }
  }
  // No usable entity: the header term is kept at its weight, so logits are
  // w_h * cos(header, prototype).
  if (count == 0) return repr;
  const double norm = Norm(repr);
  if (norm == 0.0) return repr;
  for (double& x : repr) x /= norm;
  return repr;
}

LogitVector PrototypeVictim::PredictLogits(
    const Table& table, int col, std::span<const std::string> classes) const {
  if (classes.empty()) throw std::invalid_argument("no classes requested");
  std::vector<const Vector*> protos;
  protos.reserve(classes.size());
  for (const std::string& cls : classes) {
    auto it = prototypes_.find(cls);
    if (it == prototypes_.end()) throw UnknownClassError(cls);
    protos.push_back(&it->second);
  }
  const Vector repr = ColumnRepresentation(table, col);
  LogitVector out;
  out.classes.assign(classes.begin(), classes.end());
  out.scores.reserve(classes.size());
  for (const Vector* p : protos) out.scores.push_back(Dot(repr, *p));
  return out;
}

PrototypeVictim BuildPrototypeVictim(
    const Corpus& train, std::shared_ptr<const EmbeddingStore> embeddings,
    PrototypeVictimOptions options) {
  if (!embeddings) throw std::invalid_argument("victim needs embeddings");
  const int d = embeddings->dimension();
  std::map<std::string, Vector> sums;
  std::map<std::string, int> counts;
  std::size_t skipped = 0;
  for (const Table& table : train.tables()) {
    for (const auto& [col, classes] : table.annotations()) {
      const std::string& cls = classes.front();
      Vector& sum = sums.try_emplace(cls, Vector(d, 0.0)).first->second;
      counts.try_emplace(cls, 0);
      for (int row = 1; row <= table.num_rows(); ++row) {
        const std::string& cell = table.cell(row, col);
        if (IsMasked(cell)) continue;
        const Vector* v = embeddings->Find(cell);
        if (v == nullptr) {
          if (options.missing == MissingEmbedding::kFail) {
            throw std::invalid_argument("no embedding for train entity '" +
                                        cell + "'");
          }
          ++skipped;
          continue;
        }
        for (int k = 0; k < d; ++k) sum[k] += (*v)[k];
        ++counts[cls];
      }
    }
  }
  std::map<std::string, Vector> prototypes;
  for (auto& [cls, sum] : sums) {
    const int n = counts[cls];
    if (n == 0) {
      throw std::invalid_argument("class '" + cls +
                                  "' has no training entities");
    }
    for (double& x : sum) x /= n;
    if (Norm(sum) < 1e-12) {
      throw std::invalid_argument("class '" + cls +
                                  "' has a degenerate zero-mean prototype");
    }
    prototypes.emplace(cls, Normalized(sum));
  }
  PrototypeVictim victim(std::move(prototypes), std::move(embeddings), options);
  victim.set_skipped_mentions(skipped);
  return victim;
}

void SavePrototypeModel(const PrototypeVictim& victim,
                        const std::filesystem::path& model_path,
                        const std::filesystem::path& embeddings_path) {
  std::filesystem::path stored = embeddings_path;
  const auto base = model_path.parent_path().empty()
                        ? std::filesystem::current_path()
                        : std::filesystem::absolute(model_path.parent_path());
  std::error_code ec;
  auto rel = std::filesystem::relative(
      std::filesystem::absolute(embeddings_path), base, ec);
  if (!ec && !rel.empty()) stored = rel;

  nlohmann::json protos = nlohmann::json::object();
  for (const auto& [cls, v] : victim.prototypes()) protos[cls] = v;
  nlohmann::json model{
      {"format", kModelFormat},
      {"dimension", victim.dimension()},
      {"header_weight", victim.options().header_weight},
      {"threshold", victim.options().threshold},
      {"missing_embedding", MissingName(victim.options().missing)},
      {"embeddings", stored.generic_string()},
      {"prototypes", std::move(protos)}};
  std::ofstream out(model_path);
  if (!out) throw InputError("cannot write model file " + model_path.string());
  out << model.dump(1) << '\n';
}

namespace {

nlohmann::json ReadModelJson(const std::filesystem::path& model_path) {
  std::ifstream in(model_path);
  if (!in) throw InputError("cannot open model file " + model_path.string());
  nlohmann::json model;
  try {
    model = nlohmann::json::parse(in);
    if (model.at("format") != kModelFormat) {
      throw InputError("unsupported model format");
    }
  } catch (const std::exception& e) {
    throw InputError(model_path.string() + ": " + e.what());
  }
  return model;
}

std::filesystem::path ResolveEmbeddings(
    const nlohmann::json& model, const std::filesystem::path& model_path) {
  std::filesystem::path emb = model.at("embeddings").get<std::string>();
  if (emb.is_relative()) emb = model_path.parent_path() / emb;
  return emb;
}

}  // namespace

std::filesystem::path PrototypeModelEmbeddings(
    const std::filesystem::path& model_path) {
  const nlohmann::json model = ReadModelJson(model_path);
  try {
    return ResolveEmbeddings(model, model_path);
  } catch (const std::exception& e) {
    throw InputError(model_path.string() + ": " + e.what());
  }
}

PrototypeVictim LoadPrototypeModel(const std::filesystem::path& model_path) {
  const nlohmann::json model = ReadModelJson(model_path);
  try {
    const std::filesystem::path emb = ResolveEmbeddings(model, model_path);
    auto store =
        std::make_shared<const EmbeddingStore>(LoadEmbeddingsFile(emb));
    if (store->dimension() != model.at("dimension").get<int>()) {
      throw InputError("embedding dimension does not match the model");
    }
    std::map<std::string, Vector> protos;
    for (const auto& [cls, v] : model.at("prototypes").items()) {
      protos.emplace(cls, v.get<Vector>());
    }
    PrototypeVictimOptions options;
    options.header_weight = model.at("header_weight").get<double>();
    options.threshold = model.at("threshold").get<double>();
    options.missing =
        ParseMissing(model.value("missing_embedding", std::string("skip")));
    return PrototypeVictim(std::move(protos), std::move(store), options);
  } catch (const std::exception& e) {
    throw InputError(model_path.string() + ": " + e.what());
  }
}

}  // namespace tabattack
