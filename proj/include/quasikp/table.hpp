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

#pragma once

// Column-oriented result tables written as CSV or JSON.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qkp {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

enum class TableFormat { csv, json };

/// Parses "csv" or "json"; throws ConfigError otherwise.
TableFormat parse_table_format(const std::string& name);

/// One header line, '.' decimals, shortest round-trip numbers.
void write_csv(const Table& table, std::ostream& out);

/// An object mapping each column name to the array of its values, in column
/// order. Non-finite numbers become null.
void write_json(const Table& table, std::ostream& out);

void write_table(const Table& table, TableFormat format, std::ostream& out);

}  // namespace qkp
