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

#ifndef TABATTACK_TABLE_H_
#define TABATTACK_TABLE_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tabattack {

// Reserved cell value standing in for a masked entity. Victims decide how to
// consume it.
inline constexpr std::string_view kMaskToken = "[MASK]";

// Column index -> ordered class list, most specific class first.
using Annotations = std::map<int, std::vector<std::string>>;

// Address of a body cell. Row 0 is the header row, so body rows start at 1.
struct CellRef {
  std::string table_id;
  int row = 1;
  int col = 0;

  friend bool operator==(const CellRef&, const CellRef&) = default;
};

// An entity table: header row, n x m body grid, and per-column multilabel
// annotations. Tables are value types; every perturbation returns a new one.
class Table {
 public:
  Table() = default;

  // Validates all invariants and throws std::invalid_argument on violation:
  // n >= 1, m >= 1, rectangular rows, annotation columns in [0, m), and each
  // annotation list non-empty and duplicate-free.
  Table(std::string table_id, std::vector<std::string> headers,
        std::vector<std::vector<std::string>> rows, Annotations annotations);

  const std::string& id() const { return table_id_; }
  const std::vector<std::string>& headers() const { return headers_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  const Annotations& annotations() const { return annotations_; }

  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_cols() const { return static_cast<int>(headers_.size()); }

  const std::string& header(int col) const;
  // Body cell access with 1-based rows; throws std::out_of_range.
  const std::string& cell(int row, int col) const;
  const std::string& cell(const CellRef& ref) const;

  bool is_annotated(int col) const { return annotations_.count(col) > 0; }
  // Ground-truth classes of a column; throws std::out_of_range if the column
  // carries no annotation.
  const std::vector<std::string>& classes(int col) const;
  const std::string& most_specific_class(int col) const {
    return classes(col).front();
  }

  // Copy-on-write edits. These check bounds and otherwise leave every other
  // cell and header untouched.
  Table WithCell(const CellRef& ref, std::string value) const;
  Table WithHeader(int col, std::string value) const;

  friend bool operator==(const Table&, const Table&) = default;

 private:
  void CheckRef(const CellRef& ref) const;

  std::string table_id_;
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> rows_;
  Annotations annotations_;
};

enum class Split { kTrain, kTest };

std::string_view SplitName(Split split);
Split ParseSplit(std::string_view name);

// A set of tables sharing a split. Table ids are unique.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Table> tables, Split split);

  const std::vector<Table>& tables() const { return tables_; }
  Split split() const { return split_; }
  std::size_t size() const { return tables_.size(); }
  bool empty() const { return tables_.empty(); }

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<Table> tables_;
  Split split_ = Split::kTest;
};

// Body cells of column `col` in row order; the header is excluded.
std::vector<std::pair<CellRef, std::string>> Column(const Table& table,
                                                    int col);

// Copy of `table` with the referenced cell replaced by kMaskToken. The cell
// must not already be masked.
Table MaskEntity(const Table& table, const CellRef& ref);

// Copy of `table` with the referenced cell replaced by `replacement`, which
// must be non-empty.
Table SwapEntity(const Table& table, const CellRef& ref,
                 std::string replacement);

bool IsMasked(std::string_view cell);

}  // namespace tabattack

#endif  // TABATTACK_TABLE_H_
