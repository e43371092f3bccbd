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

#ifndef GRAMDP_INGEST_HPP_
#define GRAMDP_INGEST_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "gramdp/sensitivity.hpp"

namespace gramdp {

// Raw CSV table: header row plus text cells. Every row has exactly
// |header| cells; ragged input is rejected at load time.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool operator==(const Table&) const = default;
};

// A fully validated numeric column. No NaN, no infinities, no empty cells,
// and exactly one value per source row; validation refuses rather than
// imputes, so query semantics never shift silently.
struct NumericColumn {
  std::string name;
  std::vector<double> values;
  std::size_t source_row_count = 0;
};

// Parses an RFC-4180-style CSV file: comma delimiter, first row is the
// header, optional double-quote quoting ("" escapes a quote, newlines are
// allowed inside quotes), UTF-8 passed through, CRLF tolerated.
// Errors: FileNotFound, MalformedCsv(line), RaggedRow(line).
Table load_csv(const std::string& path);

// Inverse of load_csv for well-formed tables; quotes only where needed.
void write_csv(const Table& table, std::ostream& out);
void write_csv(const Table& table, const std::string& path);

// Extracts a column and parses every cell as a finite decimal real
// (locale-independent: '.' decimal point, no thousands separators).
// Errors: NoSuchColumn, EmptyCell(row), NonNumericCell(row, content);
// row numbers are 1-based data-row indices (header excluded).
NumericColumn select_numeric_column(const Table& table,
                                    const std::string& name);

// Bounds from the observed min/max of the column, per the convention of
// treating absent user bounds as "derive them from the data". A constant
// column is widened by +/-degenerate_halfwidth to keep the domain valid.
// Data-derived bounds leak information about the data; callers must flag
// results computed from them (DpResult::bounds_were_inferred).
BoundedDomain infer_bounds(const NumericColumn& column,
                           double degenerate_halfwidth = 0.5);

// Each value replaced by min(max(v, lower), upper); row count unchanged.
// Input clamping is what makes the declared-domain sensitivity bounds sound
// for data that strays outside the domain.
NumericColumn clamp_to_bounds(const NumericColumn& column,
                              const BoundedDomain& domain);

}  // namespace gramdp

#endif  // GRAMDP_INGEST_HPP_
