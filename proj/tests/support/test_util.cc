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

#include "test_util.h"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace tabattack::testing {

std::filesystem::path ScratchDir(const std::string& name) {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  std::string leaf = name;
  if (info != nullptr) {
    leaf =
        std::string(info->test_suite_name()) + "." + info->name() + "." + name;
  }
  const std::filesystem::path dir =
      std::filesystem::path(::testing::TempDir()) / "tabattack" / leaf;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::shared_ptr<EmbeddingStore> MakeStore(
    int dim,
    std::initializer_list<std::pair<std::string, std::vector<double>>> items) {
  auto store = std::make_shared<EmbeddingStore>(dim);
  for (const auto& [token, v] : items) store->Add(token, v);
  return store;
}

Table ColumnTable(const std::string& id, const std::string& header,
                  const std::vector<std::string>& cells,
                  std::vector<std::string> classes) {
  std::vector<std::vector<std::string>> rows;
  for (const std::string& c : cells) rows.push_back({c});
  return Table(id, {header}, std::move(rows), {{0, std::move(classes)}});
}

const FixtureData& DefaultFixture() {
  static const FixtureData* data = new FixtureData(GenerateFixture({}));
  return *data;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace tabattack::testing
