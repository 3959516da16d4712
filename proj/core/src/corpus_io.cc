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

#include "tabattack/corpus_io.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tabattack/errors.h"

namespace tabattack {
namespace {

constexpr int kMaxReportedErrors = 20;

std::vector<std::string> StringArray(const nlohmann::json& value,
                                     const char* field) {
  if (!value.is_array()) {
    throw std::invalid_argument(std::string("'") + field +
                                "' must be an array of strings");
  }
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw std::invalid_argument(std::string("'") + field +
                                  "' must contain only strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

int ParseColumnKey(const std::string& key) {
  int col = -1;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), col);
  if (ec != std::errc() || ptr != key.data() + key.size() || key.empty()) {
    throw std::invalid_argument("annotation key '" + key +
                                "' is not a column index");
  }
  return col;
}

}  // namespace

nlohmann::json TableToJson(const Table& table) {
  nlohmann::json annotations = nlohmann::json::object();
  for (const auto& [col, classes] : table.annotations()) {
    annotations[std::to_string(col)] = classes;
  }
  return nlohmann::json{{"table_id", table.id()},
                        {"headers", table.headers()},
                        {"rows", table.rows()},
                        {"annotations", std::move(annotations)}};
}

Table TableFromJson(const nlohmann::json& record) {
  if (!record.is_object()) {
    throw std::invalid_argument("record is not an object");
  }
  for (const char* field : {"table_id", "headers", "rows"}) {
    if (!record.contains(field)) {
      throw std::invalid_argument(std::string("missing field '") + field + "'");
    }
  }
  if (!record["table_id"].is_string()) {
    throw std::invalid_argument("'table_id' must be a string");
  }
  const auto& rows_json = record["rows"];
  if (!rows_json.is_array()) {
    throw std::invalid_argument("'rows' must be an array of arrays");
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(rows_json.size());
  for (const auto& row : rows_json) rows.push_back(StringArray(row, "rows"));

  Annotations annotations;
  if (record.contains("annotations")) {
    const auto& ann = record["annotations"];
    if (!ann.is_object()) {
      throw std::invalid_argument("'annotations' must be an object");
    }
    for (const auto& [key, classes] : ann.items()) {
      annotations[ParseColumnKey(key)] = StringArray(classes, "annotations");
    }
  }
  return Table(record["table_id"].get<std::string>(),
               StringArray(record["headers"], "headers"), std::move(rows),
               std::move(annotations));
}

Corpus ParseCorpus(std::istream& in, Split split, const std::string& source) {
  std::vector<Table> tables;
  std::vector<std::string> errors;
  int error_count = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      tables.push_back(TableFromJson(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      if (++error_count <= kMaxReportedErrors) {
        errors.push_back(source + ":" + std::to_string(line_no) + ": " +
                         e.what());
      }
    }
  }
  if (in.bad()) throw InputError(source + ": read failure");
  if (error_count > 0) {
    std::ostringstream msg;
    msg << error_count << " malformed record(s)";
    for (const auto& e : errors) msg << "\n  " << e;
    throw InputError(msg.str());
  }
  try {
    return Corpus(std::move(tables), split);
  } catch (const std::invalid_argument& e) {
    throw InputError(source + ": " + e.what());
  }
}

Corpus ParseCorpusFile(const std::filesystem::path& path, Split split) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file " + path.string());
  return ParseCorpus(in, split, path.string());
}

void WriteCorpus(const Corpus& corpus, std::ostream& out) {
  for (const Table& t : corpus.tables()) out << TableToJson(t).dump() << '\n';
}

void WriteCorpusFile(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write corpus file " + path.string());
  WriteCorpus(corpus, out);
}

}  // namespace tabattack
