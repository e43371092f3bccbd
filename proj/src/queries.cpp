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

#include "gramdp/queries.hpp"

#include <algorithm>
#include <cmath>

#include "gramdp/testonly.hpp"

namespace gramdp {
namespace {

// Everything the mechanism needs for one query: the aggregate to perturb,
// its change-one sensitivity, and the feasible release range.
struct QueryPlan {
  double true_value = 0.0;
  double sensitivity = 0.0;
  double range_lo = 0.0;
  double range_hi = 0.0;
  bool round_to_integer = false;
};

double clamped(double v, const BoundedDomain& d) {
  return std::clamp(v, d.lower, d.upper);
}

const BoundedDomain& require_bounds(const QuerySpec& spec) {
  if (!spec.bounds) {
    throw Error(Errc::unresolved_bounds,
                std::string("UnresolvedBounds: ") +
                    query_kind_name(spec.kind) +
                    " needs lower/upper bounds (explicit or inferred)");
  }
  return *spec.bounds;
}

QueryPlan plan_query(std::span<const double> column, const QuerySpec& spec) {
  if (column.empty()) {
    throw Error(Errc::empty_column,
                std::string("EmptyColumn: cannot run ") +
                    query_kind_name(spec.kind));
  }
  const double n = static_cast<double>(column.size());
  QueryPlan plan;
  switch (spec.kind) {
    case QueryKind::kCount: {
      plan.true_value = n;
      plan.sensitivity = count_sensitivity();
      plan.range_lo = 0.0;
      plan.range_hi = 2.0 * n;  // generous feasible cap on a noisy count
      plan.round_to_integer = true;
      return plan;
    }
    case QueryKind::kSum: {
      const BoundedDomain& d = require_bounds(spec);
      double sum = 0.0;
      for (double v : column) sum += spec.clamp_inputs ? clamped(v, d) : v;
      plan.true_value = sum;
      plan.sensitivity = sum_sensitivity(d);
      plan.range_lo = n * d.lower;
      plan.range_hi = n * d.upper;
      return plan;
    }
    case QueryKind::kMean: {
      const BoundedDomain& d = require_bounds(spec);
      double sum = 0.0;
      for (double v : column) sum += spec.clamp_inputs ? clamped(v, d) : v;
      plan.true_value = sum / n;
      plan.sensitivity = mean_sensitivity(d, column.size());
      plan.range_lo = d.lower;
      plan.range_hi = d.upper;
      return plan;
    }
    case QueryKind::kVariance: {
      if (column.size() < 2) {
        throw Error(Errc::need_at_least_two_rows,
                    "NeedAtLeastTwoRows: variance of a single row is "
                    "undefined");
      }
      const BoundedDomain& d = require_bounds(spec);
      double sum = 0.0;
      for (double v : column) sum += spec.clamp_inputs ? clamped(v, d) : v;
      const double mean = sum / n;
      double ss = 0.0;
      for (double v : column) {
        const double x = spec.clamp_inputs ? clamped(v, d) : v;
        ss += (x - mean) * (x - mean);
      }
      plan.true_value = ss / n;  // population variance; see sensitivity.hpp
      plan.sensitivity = variance_sensitivity(d, column.size());
      plan.range_lo = 0.0;
      plan.range_hi = d.width() * d.width();
      return plan;
    }
  }
  throw Error(Errc::invalid_argument, "plan_query: unknown query kind");
}

DpResult release(std::span<const double> column, const QuerySpec& spec,
                 RngStream& rng) {
  const QueryPlan plan = plan_query(column, spec);
  const PrivacyParams params = resolve_privacy(spec);
  double value = bounded_laplace_mechanism(
      plan.true_value, plan.sensitivity, params,
      OutputRange(plan.range_lo, plan.range_hi), rng);
  if (plan.round_to_integer) {
    value = std::max(0.0, std::round(value));
  }
  DpResult result;
  result.value = value;
  result.epsilon_spent = params.epsilon();
  result.query = spec.kind;
  result.bounds_used =
      spec.kind == QueryKind::kCount ? std::nullopt : spec.bounds;
  result.bounds_were_inferred =
      spec.kind != QueryKind::kCount && spec.bounds_were_inferred;
  return result;
}

}  // namespace

const char* privacy_level_name(PrivacyLevel level) {
  switch (level) {
    case PrivacyLevel::kVeryHigh:
      return "very_high";
    case PrivacyLevel::kHigh:
      return "high";
    case PrivacyLevel::kModerate:
      return "moderate";
    case PrivacyLevel::kLow:
      return "low";
    case PrivacyLevel::kVeryLow:
      return "very_low";
  }
  return "unknown";
}

std::optional<PrivacyLevel> parse_privacy_level(const std::string& name) {
  for (PrivacyLevel level : kPrivacyLevelsStrongestFirst) {
    if (name == privacy_level_name(level)) {
      return level;
    }
  }
  return std::nullopt;
}

PrivacyParams level_to_epsilon(PrivacyLevel level) {
  switch (level) {
    case PrivacyLevel::kVeryHigh:
      return PrivacyParams(0.01);
    case PrivacyLevel::kHigh:
      return PrivacyParams(0.1);
    case PrivacyLevel::kModerate:
      return PrivacyParams(0.5);
    case PrivacyLevel::kLow:
      return PrivacyParams(1.0);
    case PrivacyLevel::kVeryLow:
      return PrivacyParams(5.0);
  }
  throw Error(Errc::invalid_argument, "level_to_epsilon: unknown level");
}

PrivacyParams resolve_privacy(const QuerySpec& spec) {
  if (const auto* params = std::get_if<PrivacyParams>(&spec.privacy)) {
    return *params;
  }
  return level_to_epsilon(std::get<PrivacyLevel>(spec.privacy));
}

DpResult dp_count(std::span<const double> column, const QuerySpec& spec,
                  RngStream& rng) {
  QuerySpec s = spec;
  s.kind = QueryKind::kCount;
  return release(column, s, rng);
}

DpResult dp_sum(std::span<const double> column, const QuerySpec& spec,
                RngStream& rng) {
  QuerySpec s = spec;
  s.kind = QueryKind::kSum;
  return release(column, s, rng);
}

DpResult dp_mean(std::span<const double> column, const QuerySpec& spec,
                 RngStream& rng) {
  QuerySpec s = spec;
  s.kind = QueryKind::kMean;
  return release(column, s, rng);
}

DpResult dp_variance(std::span<const double> column, const QuerySpec& spec,
                     RngStream& rng) {
  QuerySpec s = spec;
  s.kind = QueryKind::kVariance;
  return release(column, s, rng);
}

DpResult run_query(std::span<const double> column, const QuerySpec& spec,
                   RngStream& rng) {
  return release(column, spec, rng);
}

double plain_aggregate(QueryKind kind, std::span<const double> column,
                       const std::optional<BoundedDomain>& bounds,
                       bool clamp_inputs) {
  QuerySpec spec;
  spec.kind = kind;
  spec.bounds = bounds;
  spec.clamp_inputs = clamp_inputs;
  return plan_query(column, spec).true_value;
}

namespace testonly {

double unclamped_query_value(std::span<const double> column,
                             const QuerySpec& spec, RngStream& rng) {
  const QueryPlan plan = plan_query(column, spec);
  const PrivacyParams params = resolve_privacy(spec);
  return laplace_mechanism(plan.true_value, plan.sensitivity, params, rng);
}

}  // namespace testonly
}  // namespace gramdp
