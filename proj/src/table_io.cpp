// Copyright 2026 The quasikp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quasikp/table.hpp"

#include "quasikp/error.hpp"
#include "quasikp/format.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <ostream>

namespace qkp {

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  const auto& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw DomainError("table row has " + std::to_string(row.size()) + " cells, expected " +
                      std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "json") return TableFormat::json;
  throw ConfigError({"format must be csv or json, got '" + name + "'"});
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    auto column = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      const auto& cell = row[c];
      if (const auto* d = std::get_if<double>(&cell)) {
        column.push_back(std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json());
      } else if (const auto* i = std::get_if<long long>(&cell)) {
        column.push_back(*i);
      } else {
        column.push_back(std::get<std::string>(cell));
      }
    }
    doc[table.columns[c]] = std::move(column);
  }
  out << doc.dump(2) << '\n';
}

void write_table(const Table& table, TableFormat format, std::ostream& out) {
  if (format == TableFormat::csv) {
    write_csv(table, out);
  } else {
    write_json(table, out);
  }
}

}  // namespace qkp
