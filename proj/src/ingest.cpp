//
// Copyright 2026 The GramDP Authors
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
//

#include "gramdp/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gramdp/errors.hpp"

namespace gramdp {
namespace {

// State-machine CSV parser over the full file contents. Quoted cells may
// contain commas, doubled quotes, and newlines; CRLF line ends are folded
// to LF outside quotes.
std::vector<std::vector<std::string>> parse_csv(
    const std::string& text, std::vector<std::size_t>* record_lines) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string cell;
  enum class State { kFieldStart, kUnquoted, kQuoted, kQuoteSeen };
  State state = State::kFieldStart;
  std::size_t line = 1;
  std::size_t record_line = 1;
  bool record_started = false;

  auto end_cell = [&] {
    record.push_back(std::move(cell));
    cell.clear();
  };
  auto end_record = [&] {
    end_cell();
    records.push_back(std::move(record));
    record.clear();
    record_lines->push_back(record_line);
    record_started = false;
    state = State::kFieldStart;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!record_started && state == State::kFieldStart) {
      record_line = line;
      record_started = true;
    }
    switch (state) {
      case State::kFieldStart:
        if (c == '"') {
          state = State::kQuoted;
        } else if (c == ',') {
          end_cell();
        } else if (c == '\n') {
          ++line;
          end_record();
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
          // handled by the \n branch next iteration
        } else {
          cell.push_back(c);
          state = State::kUnquoted;
        }
        break;
      case State::kUnquoted:
        if (c == ',') {
          end_cell();
          state = State::kFieldStart;
        } else if (c == '\n') {
          ++line;
          end_record();
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
          // swallow the CR of a CRLF
        } else if (c == '"') {
          throw Error(Errc::malformed_csv,
                      "MalformedCsv at line " + std::to_string(line) +
                          ": bare quote inside unquoted cell");
        } else {
          cell.push_back(c);
        }
        break;
      case State::kQuoted:
        if (c == '"') {
          state = State::kQuoteSeen;
        } else {
          if (c == '\n') ++line;
          cell.push_back(c);
        }
        break;
      case State::kQuoteSeen:
        if (c == '"') {
          cell.push_back('"');
          state = State::kQuoted;
        } else if (c == ',') {
          end_cell();
          state = State::kFieldStart;
        } else if (c == '\n') {
          ++line;
          end_record();
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
          // swallow the CR of a CRLF
        } else {
          throw Error(Errc::malformed_csv,
                      "MalformedCsv at line " + std::to_string(line) +
                          ": unexpected character after closing quote");
        }
        break;
    }
  }
  if (state == State::kQuoted) {
    throw Error(Errc::malformed_csv,
                "MalformedCsv at line " + std::to_string(record_line) +
                    ": unterminated quoted cell");
  }
  if (record_started || !cell.empty() || !record.empty()) {
    end_record();  // final record without trailing newline
  }
  return records;
}

bool needs_quoting(const std::string& cell) {
  return cell.find_first_of(",\"\n\r") != std::string::npos;
}

void write_cell(std::ostream& out, const std::string& cell) {
  if (!needs_quoting(cell)) {
    out << cell;
    return;
  }
  out << '"';
  for (char c : cell) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

Table load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::file_not_found, "FileNotFound: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (text.empty()) {
    throw Error(Errc::malformed_csv,
                "MalformedCsv at line 1: file is empty (missing header)");
  }

  std::vector<std::size_t> record_lines;
  auto records = parse_csv(text, &record_lines);
  if (records.empty()) {
    throw Error(Errc::malformed_csv,
                "MalformedCsv at line 1: missing header row");
  }

  Table table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw Error(Errc::ragged_row,
                  "RaggedRow at line " + std::to_string(record_lines[r]) +
                      ": expected " + std::to_string(table.header.size()) +
                      " cells, got " + std::to_string(records[r].size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i > 0) out << ',';
    write_cell(out, table.header[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      write_cell(out, row[i]);
    }
    out << '\n';
  }
}

void write_csv(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::io_error, "IoError: cannot open " + path +
                                    " for writing");
  }
  write_csv(table, out);
  if (!out) {
    throw Error(Errc::io_error, "IoError: short write to " + path);
  }
}

NumericColumn select_numeric_column(const Table& table,
                                    const std::string& name) {
  const auto it = std::find(table.header.begin(), table.header.end(), name);
  if (it == table.header.end()) {
    throw Error(Errc::no_such_column, "NoSuchColumn: \"" + name + "\"");
  }
  const std::size_t col = static_cast<std::size_t>(it - table.header.begin());

  NumericColumn column;
  column.name = name;
  column.values.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string& cell = table.rows[r][col];
    const std::size_t row_number = r + 1;  // 1-based data row
    if (cell.empty()) {
      throw Error(Errc::empty_cell,
                  "EmptyCell at data row " + std::to_string(row_number) +
                      " of column \"" + name + "\"");
    }
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
      throw Error(Errc::non_numeric_cell,
                  "NonNumericCell at data row " + std::to_string(row_number) +
                      " of column \"" + name + "\": \"" + cell + "\"");
    }
    column.values.push_back(value);
  }
  column.source_row_count = table.rows.size();
  return column;
}

BoundedDomain infer_bounds(const NumericColumn& column,
                           double degenerate_halfwidth) {
  if (column.values.empty()) {
    throw Error(Errc::empty_column,
                "EmptyColumn: cannot infer bounds for \"" + column.name +
                    "\"");
  }
  const auto [lo_it, hi_it] =
      std::minmax_element(column.values.begin(), column.values.end());
  double lo = *lo_it;
  double hi = *hi_it;
  if (lo == hi) {
    lo -= degenerate_halfwidth;
    hi += degenerate_halfwidth;
  }
  return BoundedDomain(lo, hi);
}

NumericColumn clamp_to_bounds(const NumericColumn& column,
                              const BoundedDomain& domain) {
  NumericColumn clamped = column;
  for (double& v : clamped.values) {
    v = std::clamp(v, domain.lower, domain.upper);
  }
  return clamped;
}

}  // namespace gramdp
