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

#include "tabattack/fixtures.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "tabattack/corpus_io.h"
#include "tabattack/entity_kb.h"
#include "tabattack/errors.h"
#include "tabattack/prototype_victim.h"
#include "tabattack/rng.h"
#include "tabattack/sweep.h"

namespace tabattack {
namespace {

constexpr const char* kNamedClasses[] = {
    "people.person", "location.location", "sports.pro_athlete",
    "organization.organization", "sports.sports_team"};

std::string ClassName(int i) {
  if (i < static_cast<int>(std::size(kNamedClasses))) return kNamedClasses[i];
  char buf[32];
  std::snprintf(buf, sizeof(buf), "type.class_%02d", i);
  return buf;
}

std::string Leaf(const std::string& cls) {
  const auto dot = cls.rfind('.');
  return dot == std::string::npos ? cls : cls.substr(dot + 1);
}

Vector Gaussian(Rng& rng, int d, double scale) {
  Vector v(d);
  for (double& x : v) x = scale * StandardNormal(rng);
  return v;
}

Vector RandomUnit(Rng& rng, int d) {
  for (;;) {
    Vector v = Gaussian(rng, d, 1.0);
    if (Norm(v) > 1e-9) return Normalized(v);
  }
}

// Unit vector at cosine `alignment` to the unit vector `mu`.
Vector TiltedUnit(const Vector& mu, double alignment, Rng& rng) {
  for (;;) {
    Vector r = Gaussian(rng, static_cast<int>(mu.size()), 1.0);
    const double along = Dot(r, mu);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= along * mu[k];
    if (Norm(r) < 1e-9) continue;
    r = Normalized(r);
    const double ortho = std::sqrt(std::max(0.0, 1.0 - alignment * alignment));
    Vector out(mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k) {
      out[k] = alignment * mu[k] + ortho * r[k];
    }
    return Normalized(out);
  }
}

Vector PerturbedUnit(const Vector& center, double eta, Rng& rng) {
  const Vector u = RandomUnit(rng, static_cast<int>(center.size()));
  Vector out(center.size());
  for (std::size_t k = 0; k < center.size(); ++k) {
    out[k] = center[k] + eta * u[k];
  }
  return Normalized(out);
}

Vector NoisyEntity(const Vector& centroid, double sigma, Rng& rng) {
  Vector out = centroid;
  if (sigma > 0.0) {
    for (double& x : out) x += sigma * StandardNormal(rng);
  }
  return Normalized(out);
}

template <typename T>
void Shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[UniformIndex(rng, i)]);
  }
}

// Lays out `must` (all of it, when it fits) followed by `optional`, pads to
// `cells` with uniform draws from `fill`, and shuffles.
std::vector<std::string> LayoutCells(std::vector<std::string> must,
                                     std::vector<std::string> optional,
                                     const std::vector<std::string>& fill,
                                     std::size_t cells, Rng& rng) {
  Shuffle(must, rng);
  Shuffle(optional, rng);
  std::vector<std::string> seq = std::move(must);
  for (auto& s : optional) seq.push_back(std::move(s));
  if (seq.size() > cells) seq.resize(cells);
  while (seq.size() < cells)
    seq.push_back(fill[UniformIndex(rng, fill.size())]);
  Shuffle(seq, rng);
  return seq;
}

// Columns k = 0 .. n_columns-1 get class k % n_classes; `cells[c]` is the
// flat cell sequence of class c, consumed column by column.
Corpus AssembleCorpus(const std::string& prefix, Split split, int n_columns,
                      const FixtureSpec& spec,
                      const std::vector<FixtureClassInfo>& classes,
                      const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> cursor(classes.size(), 0);
  std::vector<Table> tables;
  const int per_table = spec.columns_per_table;
  for (int t = 0; t * per_table < n_columns; ++t) {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows(
        spec.rows_per_column, std::vector<std::string>(per_table));
    Annotations annotations;
    for (int j = 0; j < per_table; ++j) {
      const int c = (t * per_table + j) % spec.n_classes;
      headers.push_back(classes[c].header);
      for (int r = 0; r < spec.rows_per_column; ++r) {
        rows[r][j] = cells[c][cursor[c]++];
      }
      annotations[j] = {classes[c].name};
    }
    char id[32];
    std::snprintf(id, sizeof(id), "%s-%04d", prefix.c_str(), t);
    tables.emplace_back(id, std::move(headers), std::move(rows),
                        std::move(annotations));
  }
  return Corpus(std::move(tables), split);
}

int ColumnsOfClass(int n_columns, int n_classes, int c) {
  return n_columns / n_classes + (c < n_columns % n_classes ? 1 : 0);
}

int TailCount(const FixtureSpec& spec) {
  return static_cast<int>(
      std::lround(spec.tail_fraction * spec.entities_per_class));
}

int TailColumns(const FixtureSpec& spec, int n_tail) {
  return (n_tail + spec.rows_per_column - 1) / spec.rows_per_column;
}

std::string FormatF1Note(double f1) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", f1);
  std::string s = buf;
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') {
    s.pop_back();
  }
  return "baseline F1 = " + s;
}

}  // namespace

double FixtureSpec::OverlapFraction(int class_index) const {
  if (class_index >= n_classes - fully_overlapped_classes) return 1.0;
  if (overlap_fractions.empty()) return 0.0;
  return overlap_fractions[class_index % overlap_fractions.size()];
}

void FixtureSpec::Validate() const {
  auto fail = [](const std::string& why) {
    throw std::invalid_argument("infeasible fixture spec: " + why);
  };
  if (n_classes < 1 || entities_per_class < 1 || train_only_per_class < 0 ||
      train_columns < 1 || test_columns < 1 || columns_per_table < 1 ||
      rows_per_column < 1 || dimension < 2 || distractor_words < 0) {
    fail("counts must be positive");
  }
  if (columns_per_table > n_classes) {
    fail("a table needs columns_per_table distinct classes");
  }
  if (test_columns % columns_per_table != 0 ||
      train_columns % columns_per_table != 0) {
    fail("column counts must be multiples of columns_per_table");
  }
  if (test_columns < n_classes || train_columns < n_classes) {
    fail("every class needs a train and a test column");
  }
  if (entities_per_class < rows_per_column) {
    fail("entities_per_class must be at least rows_per_column");
  }
  if (sigma < 0.0 || tail_fraction < 0.0 || tail_fraction > 1.0 ||
      std::abs(tail_alignment) > 1.0 || tail_alignment_spread < 0.0 ||
      std::abs(synonym_alignment) > 1.0) {
    fail("sigma, tail_fraction or an alignment is out of range");
  }
  if (fully_overlapped_classes < 0 || fully_overlapped_classes > n_classes) {
    fail("fully_overlapped_classes out of range");
  }
  for (double f : overlap_fractions) {
    if (f < 0.0 || f > 1.0) fail("overlap fractions must lie in [0, 1]");
  }
  for (int c = 0; c < n_classes; ++c) {
    const int test_cells =
        ColumnsOfClass(test_columns, n_classes, c) * rows_per_column;
    const int n_tail = TailCount(*this);
    const int head_cells =
        test_cells - TailColumns(*this, n_tail) * rows_per_column;
    if (head_cells < entities_per_class - n_tail ||
        (head_cells == 0 && n_tail < entities_per_class)) {
      fail("too few test cells to place every test entity of a class");
    }
    const long overlap = std::lround(OverlapFraction(c) * entities_per_class);
    const int train_cells =
        ColumnsOfClass(train_columns, n_classes, c) * rows_per_column;
    if (train_cells < overlap) {
      fail("too few train cells to place the planted overlap");
    }
    if (overlap == 0 && train_only_per_class == 0) {
      fail("a class has no train entities");
    }
  }
}

nlohmann::json FixtureSpecToJson(const FixtureSpec& s) {
  return nlohmann::json{
      {"n_classes", s.n_classes},
      {"entities_per_class", s.entities_per_class},
      {"train_only_per_class", s.train_only_per_class},
      {"train_columns", s.train_columns},
      {"test_columns", s.test_columns},
      {"columns_per_table", s.columns_per_table},
      {"rows_per_column", s.rows_per_column},
      {"overlap_fractions", s.overlap_fractions},
      {"fully_overlapped_classes", s.fully_overlapped_classes},
      {"tail_fraction", s.tail_fraction},
      {"tail_alignment", s.tail_alignment},
      {"tail_alignment_spread", s.tail_alignment_spread},
      {"dimension", s.dimension},
      {"sigma", s.sigma},
      {"header_noise", s.header_noise},
      {"synonym_alignment", s.synonym_alignment},
      {"synonym_noise", s.synonym_noise},
      {"distractor_words", s.distractor_words},
      {"header_weight", s.header_weight},
      {"seed", s.seed}};
}

FixtureSpec FixtureSpecFromJson(const nlohmann::json& j) {
  FixtureSpec s;
  s.n_classes = j.value("n_classes", s.n_classes);
  s.entities_per_class = j.value("entities_per_class", s.entities_per_class);
  s.train_only_per_class =
      j.value("train_only_per_class", s.train_only_per_class);
  s.train_columns = j.value("train_columns", s.train_columns);
  s.test_columns = j.value("test_columns", s.test_columns);
  s.columns_per_table = j.value("columns_per_table", s.columns_per_table);
  s.rows_per_column = j.value("rows_per_column", s.rows_per_column);
  s.overlap_fractions = j.value("overlap_fractions", s.overlap_fractions);
  s.fully_overlapped_classes =
      j.value("fully_overlapped_classes", s.fully_overlapped_classes);
  s.tail_fraction = j.value("tail_fraction", s.tail_fraction);
  s.tail_alignment = j.value("tail_alignment", s.tail_alignment);
  s.tail_alignment_spread =
      j.value("tail_alignment_spread", s.tail_alignment_spread);
  s.dimension = j.value("dimension", s.dimension);
  s.sigma = j.value("sigma", s.sigma);
  s.header_noise = j.value("header_noise", s.header_noise);
  s.synonym_alignment = j.value("synonym_alignment", s.synonym_alignment);
  s.synonym_noise = j.value("synonym_noise", s.synonym_noise);
  s.distractor_words = j.value("distractor_words", s.distractor_words);
  s.header_weight = j.value("header_weight", s.header_weight);
  s.seed = j.value("seed", s.seed);
  return s;
}

double CalibrateThreshold(const Corpus& train, const EmbeddingStore& store,
                          double header_weight, double* best_f1) {
  auto shared = std::make_shared<const EmbeddingStore>(store);
  const PrototypeVictim base =
      BuildPrototypeVictim(train, shared, {header_weight, 0.5});
  std::vector<double> best_taus;
  double best = -1.0;
  for (int step = 1; step <= 19; ++step) {
    const double tau = step * 0.05;
    PrototypeVictim victim(base.prototypes(), shared, {header_weight, tau});
    const double f1 = EvaluateCorpus(train, victim, 1).f1;
    if (f1 > best + 1e-12) {
      best = f1;
      best_taus.clear();
    }
    if (std::abs(f1 - best) <= 1e-12) best_taus.push_back(tau);
  }
  if (best_f1 != nullptr) *best_f1 = best;
  return best_taus[(best_taus.size() - 1) / 2];
}

FixtureData GenerateFixture(const FixtureSpec& spec) {
  spec.Validate();
  const int d = spec.dimension;
  Rng rng(spec.seed);
  FixtureData data;
  data.spec = spec;
  data.embeddings = EmbeddingStore(d);
  data.synonyms = EmbeddingStore(d);

  std::vector<std::vector<std::string>> test_entities(spec.n_classes);
  std::vector<std::vector<std::string>> overlap_entities(spec.n_classes);
  std::vector<std::vector<std::string>> train_only(spec.n_classes);

  for (int c = 0; c < spec.n_classes; ++c) {
    FixtureClassInfo info;
    info.name = ClassName(c);
    const std::string leaf = Leaf(info.name);
    info.header = leaf;
    info.synonym = leaf + "_alt";
    info.centroid = RandomUnit(rng, d);
    const double alignment =
        std::clamp(spec.tail_alignment + spec.tail_alignment_spread *
                                             (2.0 * UniformUnit(rng) - 1.0),
                   -1.0, 1.0);
    const Vector tail_centroid = TiltedUnit(info.centroid, alignment, rng);

    const int n = spec.entities_per_class;
    info.test_entities = n;
    info.tail = TailCount(spec);
    info.overlap = static_cast<int>(std::lround(spec.OverlapFraction(c) * n));
    const int head = n - info.tail;
    for (int k = 0; k < n; ++k) {
      std::string name = leaf + " " + std::to_string(k + 1);
      const Vector& centre = k < head ? info.centroid : tail_centroid;
      data.embeddings.Add(name, NoisyEntity(centre, spec.sigma, rng));
      if (k < info.overlap) overlap_entities[c].push_back(name);
      test_entities[c].push_back(std::move(name));
    }
    for (int k = 0; k < spec.train_only_per_class; ++k) {
      std::string name = leaf + " " + std::to_string(n + k + 1);
      data.embeddings.Add(name, NoisyEntity(info.centroid, spec.sigma, rng));
      train_only[c].push_back(std::move(name));
    }
    data.classes.push_back(std::move(info));
  }

  // Header words as the victim embeds them.
  for (const FixtureClassInfo& info : data.classes) {
    data.embeddings.Add(info.header,
                        PerturbedUnit(info.centroid, spec.header_noise, rng));
    data.embeddings.Add(info.synonym,
                        TiltedUnit(info.centroid, spec.synonym_alignment, rng));
  }

  // The attacker's independent synonym model.
  for (const FixtureClassInfo& info : data.classes) {
    const Vector word = RandomUnit(rng, d);
    data.synonyms.Add(info.header, word);
    data.synonyms.Add(info.synonym,
                      PerturbedUnit(word, spec.synonym_noise, rng));
  }
  for (int k = 0; k < spec.distractor_words; ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "word_%02d", k);
    data.synonyms.Add(name, RandomUnit(rng, d));
  }
  for (const FixtureClassInfo& info : data.classes) {
    if (NearestSynonym(data.synonyms, info.header) != info.synonym) {
      throw std::logic_error("planted synonym of '" + info.header +
                             "' is not its nearest neighbour; lower "
                             "synonym_noise");
    }
  }

  std::vector<std::vector<std::string>> test_cells(spec.n_classes);
  std::vector<std::vector<std::string>> train_cells(spec.n_classes);
  for (int c = 0; c < spec.n_classes; ++c) {
    const std::size_t n_test =
        ColumnsOfClass(spec.test_columns, spec.n_classes, c) *
        spec.rows_per_column;
    // Tail entities fill dedicated columns at the end of the class's
    // sequence; head entities cover the remaining columns.
    const int n_tail = data.classes[c].tail;
    const int head = spec.entities_per_class - n_tail;
    const std::size_t tail_cells =
        static_cast<std::size_t>(TailColumns(spec, n_tail)) *
        spec.rows_per_column;
    std::vector<std::string> heads(test_entities[c].begin(),
                                   test_entities[c].begin() + head);
    std::vector<std::string> tails(test_entities[c].begin() + head,
                                   test_entities[c].end());
    test_cells[c] = LayoutCells(heads, {}, heads, n_test - tail_cells, rng);
    if (tail_cells > 0) {
      auto tail_seq = LayoutCells(tails, {}, tails, tail_cells, rng);
      test_cells[c].insert(test_cells[c].end(), tail_seq.begin(),
                           tail_seq.end());
    }
    std::vector<std::string> train_pool = overlap_entities[c];
    train_pool.insert(train_pool.end(), train_only[c].begin(),
                      train_only[c].end());
    const std::size_t n_train =
        ColumnsOfClass(spec.train_columns, spec.n_classes, c) *
        spec.rows_per_column;
    train_cells[c] = LayoutCells(overlap_entities[c], train_only[c], train_pool,
                                 n_train, rng);
  }
  data.test = AssembleCorpus("test", Split::kTest, spec.test_columns, spec,
                             data.classes, test_cells);
  data.train = AssembleCorpus("train", Split::kTrain, spec.train_columns, spec,
                              data.classes, train_cells);

  data.threshold = CalibrateThreshold(data.train, data.embeddings,
                                      spec.header_weight, &data.train_f1);
  auto shared = std::make_shared<const EmbeddingStore>(data.embeddings);
  const PrototypeVictim victim = BuildPrototypeVictim(
      data.train, shared, {spec.header_weight, data.threshold});
  data.baseline_test_f1 = EvaluateCorpus(data.test, victim, 1).f1;
  return data;
}

nlohmann::json FixtureData::Metadata() const {
  nlohmann::json classes_json = nlohmann::json::array();
  for (const FixtureClassInfo& c : classes) {
    classes_json.push_back({{"name", c.name},
                            {"header", c.header},
                            {"synonym", c.synonym},
                            {"test_entities", c.test_entities},
                            {"overlap", c.overlap},
                            {"filtered", c.test_entities - c.overlap},
                            {"tail", c.tail}});
  }
  return nlohmann::json{{"generator", "tabattack-fixture/1"},
                        {"spec", FixtureSpecToJson(spec)},
                        {"calibration",
                         {{"threshold", threshold},
                          {"header_weight", spec.header_weight},
                          {"train_f1", train_f1},
                          {"baseline_test_f1", baseline_test_f1},
                          {"note", FormatF1Note(baseline_test_f1)}}},
                        {"files",
                         {{"train", "train.jsonl"},
                          {"test", "test.jsonl"},
                          {"embeddings", "embeddings.txt"},
                          {"synonyms", "synonyms.txt"}}},
                        {"classes", std::move(classes_json)}};
}

FixtureFiles FixtureFilesIn(const std::filesystem::path& dir) {
  return FixtureFiles{dir / "train.jsonl", dir / "test.jsonl",
                      dir / "embeddings.txt", dir / "synonyms.txt",
                      dir / "fixture.json"};
}

FixtureFiles WriteFixture(const FixtureData& data,
                          const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const FixtureFiles files = FixtureFilesIn(dir);
  WriteCorpusFile(data.train, files.train);
  WriteCorpusFile(data.test, files.test);
  WriteEmbeddingsFile(data.embeddings, files.embeddings);
  WriteEmbeddingsFile(data.synonyms, files.synonyms);
  std::ofstream meta(files.metadata);
  if (!meta) throw InputError("cannot write " + files.metadata.string());
  meta << data.Metadata().dump(2) << '\n';
  return files;
}

}  // namespace tabattack
