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

#ifndef TABATTACK_FIXTURES_H_
#define TABATTACK_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "tabattack/embedding_store.h"
#include "tabattack/table.h"

namespace tabattack {

// Desk-scale stand-in for a CTA benchmark. Every class c has a head
// centroid and a "tail" centroid at cosine `tail_alignment` to it. Entities
// are normalize(centroid + N(0, sigma^2 I)). Train columns only see head
// entities (the planted overlap plus train-only ones). Tail entities are
// novel test entities placed in dedicated test columns, so the filtered
// pool is tail-heavy while most test columns stay head-only.
struct FixtureSpec {
  int n_classes = 20;
  int entities_per_class = 80;    // unique test entities per class
  int train_only_per_class = 60;  // head entities never seen in test
  int train_columns = 200;
  int test_columns = 200;
  int columns_per_table = 4;
  int rows_per_column = 10;
  // Cycled over the classes.
  std::vector<double> overlap_fractions{0.610, 0.626, 0.622, 0.719, 0.809};
  // Classes at the end of the list whose test entities all appear in train.
  int fully_overlapped_classes = 2;
  double tail_fraction = 0.125;
  // Per class, the tail centroid sits at cosine tail_alignment +/- up to
  // tail_alignment_spread (uniform) from the head centroid.
  double tail_alignment = -0.2;
  double tail_alignment_spread = 0.6;
  int dimension = 32;
  double sigma = 0.18;
  // Victim-side header embeddings: normalize(centroid + header_noise * u)
  // for a random unit u. Planted synonyms sit at cosine
  // `synonym_alignment` to the class centroid.
  double header_noise = 0.5;
  double synonym_alignment = -0.8;
  // Attacker-side synonym model: synonym = normalize(word + synonym_noise * u)
  double synonym_noise = 0.25;
  int distractor_words = 40;
  double header_weight = 0.3;
  uint64_t seed = 7;

  // Throws std::invalid_argument for an infeasible spec.
  void Validate() const;
  double OverlapFraction(int class_index) const;
};

nlohmann::json FixtureSpecToJson(const FixtureSpec& spec);
FixtureSpec FixtureSpecFromJson(const nlohmann::json& j);

struct FixtureClassInfo {
  std::string name;
  std::string header;   // header word used by its columns
  std::string synonym;  // planted nearest neighbour of `header`
  int test_entities = 0;
  int overlap = 0;
  int tail = 0;
  std::vector<double> centroid;
};

struct FixtureData {
  FixtureSpec spec;
  Corpus train;
  Corpus test;
  EmbeddingStore embeddings{1};  // entities and header words (victim side)
  EmbeddingStore synonyms{1};    // header vocabulary (attacker side)
  std::vector<FixtureClassInfo> classes;

  // Calibration on the train split.
  double threshold = 0.5;
  double train_f1 = 0.0;
  double baseline_test_f1 = 0.0;

  nlohmann::json Metadata() const;
};

// Deterministic in `spec.seed`.
FixtureData GenerateFixture(const FixtureSpec& spec);

// Picks the victim threshold on the train split: scans 0.05, 0.10, ..., 0.95
// and takes the median of the thresholds that reach the best micro-F1.
double CalibrateThreshold(const Corpus& train, const EmbeddingStore& store,
                          double header_weight, double* best_f1 = nullptr);

struct FixtureFiles {
  std::filesystem::path train;
  std::filesystem::path test;
  std::filesystem::path embeddings;
  std::filesystem::path synonyms;
  std::filesystem::path metadata;
};

FixtureFiles FixtureFilesIn(const std::filesystem::path& dir);
FixtureFiles WriteFixture(const FixtureData& data,
                          const std::filesystem::path& dir);

}  // namespace tabattack

#endif  // TABATTACK_FIXTURES_H_
