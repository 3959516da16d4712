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

#ifndef TABATTACK_CORPUS_IO_H_
#define TABATTACK_CORPUS_IO_H_

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>

#include "tabattack/table.h"

namespace tabattack {

// Line-delimited corpus format: one JSON record per line with fields
// `table_id`, `headers`, `rows` and `annotations` (column index as a string
// mapped to a most-specific-first class list). Blank lines are ignored.

nlohmann::json TableToJson(const Table& table);
// Throws std::invalid_argument describing the first schema violation.
Table TableFromJson(const nlohmann::json& record);

// Parses every line and throws InputError listing each malformed line as
// "<source>:<line>: <reason>".
Corpus ParseCorpus(std::istream& in, Split split,
                   const std::string& source = "<stream>");
Corpus ParseCorpusFile(const std::filesystem::path& path, Split split);

void WriteCorpus(const Corpus& corpus, std::ostream& out);
void WriteCorpusFile(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace tabattack

#endif  // TABATTACK_CORPUS_IO_H_
