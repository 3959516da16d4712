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

#include "tabattack/table.h"

#include <set>
#include <stdexcept>
#include <unordered_set>

namespace tabattack {

Table::Table(std::string table_id, std::vector<std::string> headers,
             std::vector<std::vector<std::string>> rows,
             Annotations annotations)
    : table_id_(std::move(table_id)),
      headers_(std::move(headers)),
      rows_(std::move(rows)),
      annotations_(std::move(annotations)) {
  if (headers_.empty()) {
    throw std::invalid_argument("table '" + table_id_ + "' has no columns");
  }
  if (rows_.empty()) {
    throw std::invalid_argument("table '" + table_id_ + "' has no body rows");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != headers_.size()) {
      throw std::invalid_argument(
          "table '" + table_id_ + "' row " + std::to_string(i + 1) + " has " +
          std::to_string(rows_[i].size()) + " cells, expected " +
          std::to_string(headers_.size()));
    }
  }
  for (const auto& [col, classes] : annotations_) {
    if (col < 0 || col >= num_cols()) {
      throw std::invalid_argument(
          "table '" + table_id_ + "' annotates column " + std::to_string(col) +
          " outside [0, " + std::to_string(num_cols()) + ")");
    }
    if (classes.empty()) {
      throw std::invalid_argument("table '" + table_id_ + "' column " +
                                  std::to_string(col) +
                                  " has an empty annotation");
    }
    std::set<std::string> seen(classes.begin(), classes.end());
    if (seen.size() != classes.size()) {
      throw std::invalid_argument("table '" + table_id_ + "' column " +
                                  std::to_string(col) +
                                  " repeats an annotation class");
    }
  }
}

const std::string& Table::header(int col) const {
  if (col < 0 || col >= num_cols()) {
    throw std::out_of_range("column " + std::to_string(col) +
                            " out of range for table '" + table_id_ + "'");
  }
  return headers_[col];
}

void Table::CheckRef(const CellRef& ref) const {
  if (!ref.table_id.empty() && ref.table_id != table_id_) {
    throw std::invalid_argument("cell reference for table '" + ref.table_id +
                                "' applied to table '" + table_id_ + "'");
  }
  if (ref.row < 1 || ref.row > num_rows() || ref.col < 0 ||
      ref.col >= num_cols()) {
    throw std::out_of_range("cell (" + std::to_string(ref.row) + ", " +
                            std::to_string(ref.col) +
                            ") out of range for table '" + table_id_ + "'");
  }
}

const std::string& Table::cell(int row, int col) const {
  return cell(CellRef{table_id_, row, col});
}

const std::string& Table::cell(const CellRef& ref) const {
  CheckRef(ref);
  return rows_[ref.row - 1][ref.col];
}

const std::vector<std::string>& Table::classes(int col) const {
  auto it = annotations_.find(col);
  if (it == annotations_.end()) {
    throw std::out_of_range("column " + std::to_string(col) + " of table '" +
                            table_id_ + "' is not annotated");
  }
  return it->second;
}

Table Table::WithCell(const CellRef& ref, std::string value) const {
  CheckRef(ref);
  Table copy = *this;
  copy.rows_[ref.row - 1][ref.col] = std::move(value);
  return copy;
}

Table Table::WithHeader(int col, std::string value) const {
  header(col);
  Table copy = *this;
  copy.headers_[col] = std::move(value);
  return copy;
}

std::string_view SplitName(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  throw std::invalid_argument("unknown split '" + std::string(name) + "'");
}

Corpus::Corpus(std::vector<Table> tables, Split split)
    : tables_(std::move(tables)), split_(split) {
  std::unordered_set<std::string> ids;
  for (const Table& t : tables_) {
    if (!ids.insert(t.id()).second) {
      throw std::invalid_argument("duplicate table id '" + t.id() + "'");
    }
  }
}

std::vector<std::pair<CellRef, std::string>> Column(const Table& table,
                                                    int col) {
  table.header(col);
  std::vector<std::pair<CellRef, std::string>> out;
  out.reserve(table.num_rows());
  for (int row = 1; row <= table.num_rows(); ++row) {
    out.emplace_back(CellRef{table.id(), row, col}, table.cell(row, col));
  }
  return out;
}

bool IsMasked(std::string_view cell) { return cell == kMaskToken; }

Table MaskEntity(const Table& table, const CellRef& ref) {
  if (IsMasked(table.cell(ref))) {
    throw std::invalid_argument("cell is already masked");
  }
  return table.WithCell(ref, std::string(kMaskToken));
}

Table SwapEntity(const Table& table, const CellRef& ref,
                 std::string replacement) {
  if (replacement.empty()) {
    throw std::invalid_argument("replacement entity is empty");
  }
  return table.WithCell(ref, std::move(replacement));
}

}  // namespace tabattack
