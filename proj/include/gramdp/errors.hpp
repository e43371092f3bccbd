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

#ifndef GRAMDP_ERRORS_HPP_
#define GRAMDP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gramdp {

// Stable error codes. The CLI surfaces them verbatim in its error JSON, so
// renaming a code is a breaking change.
enum class Errc {
  invalid_argument,
  empty_column,
  unresolved_bounds,
  need_at_least_two_rows,
  true_value_zero,
  empty_results,
  budget_exhausted,
  file_not_found,
  malformed_csv,
  ragged_row,
  no_such_column,
  non_numeric_cell,
  empty_cell,
  infeasible_enumeration,
  malformed_ledger,
  io_error,
};

// PascalCase name used in diagnostics and CLI error JSON, e.g. "RaggedRow".
const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace gramdp

#endif  // GRAMDP_ERRORS_HPP_
