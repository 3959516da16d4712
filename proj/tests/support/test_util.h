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

#ifndef TABATTACK_TESTS_SUPPORT_TEST_UTIL_H_
#define TABATTACK_TESTS_SUPPORT_TEST_UTIL_H_

#include <filesystem>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tabattack/embedding_store.h"
#include "tabattack/fixtures.h"
#include "tabattack/table.h"

namespace tabattack::testing {

// A fresh, empty directory below the gtest temp dir.
std::filesystem::path ScratchDir(const std::string& name);

std::shared_ptr<EmbeddingStore> MakeStore(
    int dim,
    std::initializer_list<std::pair<std::string, std::vector<double>>> items);

// Single-column table with header `header`, annotated with `classes`.
Table ColumnTable(const std::string& id, const std::string& header,
                  const std::vector<std::string>& cells,
                  std::vector<std::string> classes);

// The default fixture, generated once per process.
const FixtureData& DefaultFixture();

std::string ReadFile(const std::filesystem::path& path);

}  // namespace tabattack::testing

#endif  // TABATTACK_TESTS_SUPPORT_TEST_UTIL_H_
