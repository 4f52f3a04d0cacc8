// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#include "bppdist/table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include "json.hpp"

#include "bppdist/errors.hpp"

namespace bppdist {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& cell) {
  if (const auto* v = std::get_if<double>(&cell)) return format_number(*v);
  return std::get<std::string>(cell);
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

OutputTable::OutputTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw DomainError("OutputTable: at least one column required");
}

void OutputTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw DomainError("OutputTable: row has " + std::to_string(row.size()) +
                      " cells, expected " + std::to_string(columns_.size()));
  rows_.push_back(std::move(row));
}

void OutputTable::set_metadata(std::string key, std::string value) {
  for (auto& [k, v] : metadata_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  metadata_.emplace_back(std::move(key), std::move(value));
}

std::string OutputTable::to_csv() const {
  std::string out;
  for (const auto& [k, v] : metadata_) out += "# " + k + "=" + v + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(columns_[i]);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_field(cell_text(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string OutputTable::to_json() const {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata_) doc["metadata"][k] = v;
  doc["columns"] = columns_;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const Cell& c : row) {
      const auto* v = std::get_if<double>(&c);
      if (v != nullptr && std::isfinite(*v)) {
        cells.push_back(*v);
      } else {
        cells.push_back(cell_text(c));
      }
    }
    doc["rows"].push_back(std::move(cells));
  }
  return doc.dump(2) + "\n";
}

OutputTable OutputTable::from_json(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("OutputTable::from_json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("columns") || !doc.contains("rows"))
    throw DomainError("OutputTable::from_json: missing columns or rows");
  OutputTable table(doc["columns"].get<std::vector<std::string>>());
  if (doc.contains("metadata")) {
    for (const auto& [k, v] : doc["metadata"].items()) table.set_metadata(k, v.get<std::string>());
  }
  for (const auto& row : doc["rows"]) {
    std::vector<Cell> cells;
    for (const auto& c : row) {
      if (c.is_number()) {
        cells.emplace_back(c.get<double>());
        continue;
      }
      const auto s = c.get<std::string>();
      if (s == "inf") {
        cells.emplace_back(std::numeric_limits<double>::infinity());
      } else if (s == "-inf") {
        cells.emplace_back(-std::numeric_limits<double>::infinity());
      } else if (s == "nan") {
        cells.emplace_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        cells.emplace_back(s);
      }
    }
    table.add_row(std::move(cells));
  }
  return table;
}

}  // namespace bppdist
