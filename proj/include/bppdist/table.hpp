// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace bppdist {

/// A numeric or text cell. Infinite numbers serialize as "inf" / "-inf".
using Cell = std::variant<double, std::string>;

/// Rectangular result table with ordered key/value metadata.
///
/// CSV: metadata as leading "# key=value" lines, then a header row, then
/// data rows. JSON: {"metadata": {...}, "columns": [...], "rows": [[...]]}
/// where numbers are JSON numbers and non-finite numbers are strings.
class OutputTable {
 public:
  explicit OutputTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

  /// Throws DomainError if the row width differs from the column count.
  void add_row(std::vector<Cell> row);
  /// Sets or replaces a metadata entry, keeping first-insertion order.
  void set_metadata(std::string key, std::string value);

  std::string to_csv() const;
  std::string to_json() const;
  static OutputTable from_json(std::string_view text);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Shortest decimal text that round-trips to `v`; "inf", "-inf", "nan" otherwise.
std::string format_number(double v);

}  // namespace bppdist
