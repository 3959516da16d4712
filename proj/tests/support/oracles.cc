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

#include "oracles.h"

#include <cmath>

namespace tabattack::testing {

double OracleCosine(const std::vector<double>& u,
                    const std::vector<double>& v) {
  double uv = 0, uu = 0, vv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uv += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  return uv / std::sqrt(uu * vv);
}

int OracleArgminCosine(const std::vector<EntityRecord>& pool,
                       const EntityRecord& anchor,
                       const std::set<std::string>& excluded) {
  int best = -1;
  double best_cos = 0;
  for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
    const EntityRecord& r = pool[i];
    if (r.surface == anchor.surface || excluded.count(r.surface)) continue;
    const double c = OracleCosine(anchor.embedding, r.embedding);
    if (best < 0 || c < best_cos) {
      best = i;
      best_cos = c;
    }
  }
  return best;
}

std::optional<std::string> OracleNearestSynonym(
    const EmbeddingStore& store, const std::string& word,
    const std::set<std::string>& excluded) {
  const Vector* w = store.Find(word);
  if (w == nullptr) return std::nullopt;
  std::optional<std::string> best;
  double best_cos = 0;
  for (std::size_t i = 0; i < store.size(); ++i) {
    const std::string& t = store.tokens()[i];
    if (t == word || excluded.count(t)) continue;
    const double c = OracleCosine(*w, store.vector(i));
    if (!best || c > best_cos || (c == best_cos && t < *best)) {
      best = t;
      best_cos = c;
    }
  }
  return best;
}

double OracleImportance(const Victim& victim, const Table& table, int col,
                        int row) {
  auto rows = table.rows();
  const Table present(table.id(), table.headers(), rows, table.annotations());
  rows[row - 1][col] = std::string(kMaskToken);
  const Table masked(table.id(), table.headers(), rows, table.annotations());
  const std::vector<std::string>& gt = table.classes(col);
  const LogitVector a = victim.PredictLogits(present, col, gt);
  const LogitVector b = victim.PredictLogits(masked, col, gt);
  double best = -INFINITY;
  for (std::size_t k = 0; k < gt.size(); ++k) {
    const double delta = a.scores[k] - b.scores[k];
    if (delta > best) best = delta;
  }
  return best;
}

OracleCounts OracleConfusion(const std::vector<std::set<std::string>>& pred,
                             const std::vector<std::set<std::string>>& gold) {
  std::set<std::string> classes;
  for (const auto& s : pred) classes.insert(s.begin(), s.end());
  for (const auto& s : gold) classes.insert(s.begin(), s.end());
  OracleCounts out;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (const std::string& c : classes) {
      const bool p = pred[i].count(c) > 0;
      const bool g = gold[i].count(c) > 0;
      if (p && g) ++out.tp;
      if (p && !g) ++out.fp;
      if (!p && g) ++out.fn;
    }
  }
  return out;
}

}  // namespace tabattack::testing
