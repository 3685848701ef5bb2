// Copyright 2026 The rsbc Authors
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

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace rsbc::cli {

/// An output file could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Doubles use 12 significant digits; fields containing a comma, quote or
/// line break are quoted with doubled quotes. Lines end in LF.
std::string format_cell(const Cell& cell);
void write_csv(const Table& table, std::ostream& out);
/// Throws std::invalid_argument for a table without columns, IoError when
/// the file cannot be written.
void write_csv_file(const Table& table, const std::string& path);

/// Parses CSV text produced by write_csv (quoted fields included).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// `key=value` lines next to a result file.
void write_meta_file(const std::vector<std::pair<std::string, std::string>>& entries, const std::string& path);

/// `path` with its extension replaced by `.meta`.
std::string meta_path_for(const std::string& path);

}  // namespace rsbc::cli
