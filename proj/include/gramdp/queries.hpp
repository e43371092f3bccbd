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

#ifndef GRAMDP_QUERIES_HPP_
#define GRAMDP_QUERIES_HPP_

#include <optional>
#include <span>
#include <string>
#include <variant>

#include "gramdp/mechanisms.hpp"
#include "gramdp/sensitivity.hpp"

namespace gramdp {

// Named privacy presets, strongest first. Each maps to a fixed epsilon
// (see level_to_epsilon); the table is the single source of truth and is
// printed by `gramdp levels`.
enum class PrivacyLevel { kVeryHigh, kHigh, kModerate, kLow, kVeryLow };

inline constexpr PrivacyLevel kPrivacyLevelsStrongestFirst[] = {
    PrivacyLevel::kVeryHigh, PrivacyLevel::kHigh, PrivacyLevel::kModerate,
    PrivacyLevel::kLow, PrivacyLevel::kVeryLow};

// Spelled with underscores: "very_high", "high", "moderate", "low",
// "very_low".
const char* privacy_level_name(PrivacyLevel level);
std::optional<PrivacyLevel> parse_privacy_level(const std::string& name);

// very_high -> 0.01, high -> 0.1, moderate -> 0.5, low -> 1.0,
// very_low -> 5.0; delta = 0 throughout.
PrivacyParams level_to_epsilon(PrivacyLevel level);

// One DP aggregate request. Exactly one of PrivacyParams or PrivacyLevel is
// set. Bounds may be absent only until the caller resolves them (count never
// needs them; for sum/mean/variance run_query fails with UnresolvedBounds).
struct QuerySpec {
  QueryKind kind = QueryKind::kCount;
  std::optional<BoundedDomain> bounds;
  std::variant<PrivacyParams, PrivacyLevel> privacy =
      PrivacyLevel::kModerate;
  // Clamp inputs into the declared bounds before aggregating. Required for
  // the sensitivity bounds to hold on out-of-range data; disable only for
  // data certified to lie within bounds.
  bool clamp_inputs = true;
  // Provenance: set by the caller when bounds came from infer_bounds.
  bool bounds_were_inferred = false;
};

// The released answer. Deliberately carries no true value and no noise
// value; tests that need pre-noise internals go through the clearly marked
// hook in gramdp/testonly.hpp.
struct DpResult {
  double value = 0.0;
  double epsilon_spent = 0.0;
  QueryKind query = QueryKind::kCount;
  bool true_value_withheld = true;
  std::optional<BoundedDomain> bounds_used;
  bool bounds_were_inferred = false;
  bool operator==(const DpResult&) const = default;
};

// The four DP aggregates. Each computes the plain aggregate (after input
// clamping), adds Laplace(sensitivity/epsilon) noise, and clamps the release
// into the query's feasible range:
//   count: range [0, 2n], rounded to a nonnegative integer afterwards
//   sum:   range [n*lower, n*upper]
//   mean:  range [lower, upper]
//   variance (population form): range [0, (upper-lower)^2]
DpResult dp_count(std::span<const double> column, const QuerySpec& spec,
                  RngStream& rng);
DpResult dp_sum(std::span<const double> column, const QuerySpec& spec,
                RngStream& rng);
DpResult dp_mean(std::span<const double> column, const QuerySpec& spec,
                 RngStream& rng);
DpResult dp_variance(std::span<const double> column, const QuerySpec& spec,
                     RngStream& rng);

// Resolves a PrivacyLevel to its epsilon if needed and dispatches on
// spec.kind (closed enumeration; nothing is ever dispatched by evaluating
// user-supplied strings).
DpResult run_query(std::span<const double> column, const QuerySpec& spec,
                   RngStream& rng);

PrivacyParams resolve_privacy(const QuerySpec& spec);

// The non-private aggregate the mechanism perturbs (inputs clamped when
// clamp_inputs). Benchmark harnesses use this as the error baseline; it is
// not a privacy-preserving release.
double plain_aggregate(QueryKind kind, std::span<const double> column,
                       const std::optional<BoundedDomain>& bounds,
                       bool clamp_inputs = true);

}  // namespace gramdp

#endif  // GRAMDP_QUERIES_HPP_
