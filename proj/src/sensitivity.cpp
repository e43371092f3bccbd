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

#include "gramdp/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gramdp/errors.hpp"

namespace gramdp {
namespace {

constexpr double kMaxEnumerations = 1e6;

// Aggregate under test in the brute-force oracle. Kept deliberately direct
// (no reuse of the closed forms) so the oracle stays an independent route.
double evaluate_aggregate(QueryKind kind, std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  switch (kind) {
    case QueryKind::kCount:
      return n;
    case QueryKind::kSum: {
      double sum = 0.0;
      for (double v : values) sum += v;
      return sum;
    }
    case QueryKind::kMean: {
      double sum = 0.0;
      for (double v : values) sum += v;
      return sum / n;
    }
    case QueryKind::kVariance: {
      double sum = 0.0;
      for (double v : values) sum += v;
      const double mean = sum / n;
      double ss = 0.0;
      for (double v : values) ss += (v - mean) * (v - mean);
      return ss / n;  // population variance; see sensitivity.hpp
    }
  }
  throw Error(Errc::invalid_argument, "evaluate_aggregate: unknown kind");
}

}  // namespace

BoundedDomain::BoundedDomain(double lower_in, double upper_in)
    : lower(lower_in), upper(upper_in) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    throw Error(Errc::invalid_argument,
                "BoundedDomain: requires finite lower < upper, got [" +
                    std::to_string(lower) + ", " + std::to_string(upper) +
                    "]");
  }
}

const char* query_kind_name(QueryKind kind) {
  switch (kind) {
    case QueryKind::kCount:
      return "count";
    case QueryKind::kSum:
      return "sum";
    case QueryKind::kMean:
      return "mean";
    case QueryKind::kVariance:
      return "variance";
  }
  return "unknown";
}

double count_sensitivity() { return 1.0; }

double sum_sensitivity(const BoundedDomain& domain) { return domain.width(); }

double mean_sensitivity(const BoundedDomain& domain, std::size_t n) {
  if (n < 1) {
    throw Error(Errc::invalid_argument,
                "mean_sensitivity: n must be >= 1");
  }
  return domain.width() / static_cast<double>(n);
}

double variance_sensitivity(const BoundedDomain& domain, std::size_t n) {
  if (n < 2) {
    throw Error(Errc::need_at_least_two_rows,
                "variance_sensitivity: n must be >= 2");
  }
  const double dn = static_cast<double>(n);
  const double width = domain.width();
  return (dn - 1.0) / (dn * dn) * width * width;
}

double sensitivity_for(QueryKind kind, const BoundedDomain& domain,
                       std::size_t n) {
  switch (kind) {
    case QueryKind::kCount:
      return count_sensitivity();
    case QueryKind::kSum:
      return sum_sensitivity(domain);
    case QueryKind::kMean:
      return mean_sensitivity(domain, n);
    case QueryKind::kVariance:
      return variance_sensitivity(domain, n);
  }
  throw Error(Errc::invalid_argument, "sensitivity_for: unknown kind");
}

double brute_force_sensitivity(QueryKind kind, const BoundedDomain& domain,
                               std::size_t n, std::span<const double> grid) {
  if (grid.empty()) {
    throw Error(Errc::invalid_argument,
                "brute_force_sensitivity: grid is empty");
  }
  if (n < 1 || (kind == QueryKind::kVariance && n < 2)) {
    throw Error(kind == QueryKind::kVariance ? Errc::need_at_least_two_rows
                                             : Errc::invalid_argument,
                "brute_force_sensitivity: n too small for " +
                    std::string(query_kind_name(kind)));
  }
  for (double g : grid) {
    if (!(g >= domain.lower && g <= domain.upper)) {
      throw Error(Errc::invalid_argument,
                  "brute_force_sensitivity: grid value " + std::to_string(g) +
                      " lies outside the domain");
    }
  }
  double enumerations = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    enumerations *= static_cast<double>(grid.size());
    if (enumerations > kMaxEnumerations) {
      throw Error(Errc::infeasible_enumeration,
                  "brute_force_sensitivity: |grid|^n exceeds 10^6");
    }
  }

  std::vector<std::size_t> index(n, 0);
  std::vector<double> dataset(n, grid[0]);
  double worst = 0.0;
  while (true) {
    const double base = evaluate_aggregate(kind, dataset);
    // Change-one neighbors: substitute each position with each grid value.
    for (std::size_t pos = 0; pos < n; ++pos) {
      const double original = dataset[pos];
      for (double replacement : grid) {
        dataset[pos] = replacement;
        worst = std::max(worst,
                         std::abs(evaluate_aggregate(kind, dataset) - base));
      }
      dataset[pos] = original;
    }
    // Odometer step to the next dataset.
    std::size_t pos = 0;
    while (pos < n) {
      if (++index[pos] < grid.size()) {
        dataset[pos] = grid[index[pos]];
        break;
      }
      index[pos] = 0;
      dataset[pos] = grid[0];
      ++pos;
    }
    if (pos == n) break;
  }
  return worst;
}

}  // namespace gramdp
