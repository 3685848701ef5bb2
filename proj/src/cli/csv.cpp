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

#include "rsbc/cli/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace rsbc::cli {

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_cell(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) {
    char buf[40];
    // %.12g is locale-independent for the "C" locale the tool runs in.
    std::snprintf(buf, sizeof(buf), "%.12g", *d == 0.0 ? 0.0 : *d);
    return buf;
  }
  if (const std::int64_t* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return quote_if_needed(std::get<std::string>(cell));
}

void write_csv(const Table& table, std::ostream& out) {
  if (table.columns.empty()) throw std::invalid_argument("write_csv: table has no columns");
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << quote_if_needed(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_cell(row[i]);
    }
    out << '\n';
  }
}

void write_csv_file(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_csv(table, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw std::invalid_argument("parse_csv: unterminated quoted field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_meta_file(const std::vector<std::pair<std::string, std::string>>& entries, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  for (const auto& [k, v] : entries) out << k << '=' << v << '\n';
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string meta_path_for(const std::string& path) {
  std::filesystem::path p(path);
  p.replace_extension(".meta");
  return p.string();
}

}  // namespace rsbc::cli
