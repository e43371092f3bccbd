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

#include "gramdp/errors.hpp"

namespace gramdp {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_argument:
      return "InvalidArgument";
    case Errc::empty_column:
      return "EmptyColumn";
    case Errc::unresolved_bounds:
      return "UnresolvedBounds";
    case Errc::need_at_least_two_rows:
      return "NeedAtLeastTwoRows";
    case Errc::true_value_zero:
      return "TrueValueZero";
    case Errc::empty_results:
      return "EmptyResults";
    case Errc::budget_exhausted:
      return "BudgetExhausted";
    case Errc::file_not_found:
      return "FileNotFound";
    case Errc::malformed_csv:
      return "MalformedCsv";
    case Errc::ragged_row:
      return "RaggedRow";
    case Errc::no_such_column:
      return "NoSuchColumn";
    case Errc::non_numeric_cell:
      return "NonNumericCell";
    case Errc::empty_cell:
      return "EmptyCell";
    case Errc::infeasible_enumeration:
      return "InfeasibleEnumeration";
    case Errc::malformed_ledger:
      return "MalformedLedger";
    case Errc::io_error:
      return "IoError";
  }
  return "UnknownError";
}

}  // namespace gramdp
