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
// Closed-form l1/l2 sensitivity bounds for the four supported aggregates in
// the bounded change-one model: two datasets are neighbors when they have the
// same number of rows and differ in exactly one row's value, and every value
// lies in a declared domain [lower, upper].
//
// Notes on the model:
//  - Count uses sensitivity 1 even though substituting one row cannot change
//    the row count of a fixed-size dataset. The value 1 is the sensitivity of
//    a predicate (histogram-cell) count, where one substitution moves at most
//    one record in or out of the cell; that is the reading this module takes.
//  - Variance here is the population variance, (1/n) * sum (x_i - mean)^2.
//    The bound (n-1)/n^2 * (upper-lower)^2 is tight for that definition and
//    is *violated* by the (n-1)-denominator sample variance (try [0,1] vs
//    [0,0] with n = 2: the sample variance changes by 0.5, above the bound
//    of 0.25). All variance queries in this library release the population
//    variance so the calibrated noise actually covers the query.

#ifndef GRAMDP_SENSITIVITY_HPP_
#define GRAMDP_SENSITIVITY_HPP_

#include <cstddef>
#include <span>

namespace gramdp {

// Declared domain of a numeric column. Strictly lower < upper: zero-width
// domains are rejected (every sensitivity formula would degenerate to 0).
struct BoundedDomain {
  BoundedDomain(double lower_in, double upper_in);
  double width() const { return upper - lower; }
  bool operator==(const BoundedDomain&) const = default;

  double lower;
  double upper;
};

enum class QueryKind { kCount, kSum, kMean, kVariance };

// Canonical lowercase name: "count", "sum", "mean", "variance".
const char* query_kind_name(QueryKind kind);

// Predicate-count sensitivity. Always 1, independent of bounds and size.
double count_sensitivity();

// upper - lower.
double sum_sensitivity(const BoundedDomain& domain);

// (upper - lower) / n, for n >= 1.
double mean_sensitivity(const BoundedDomain& domain, std::size_t n);

// (n - 1)/n^2 * (upper - lower)^2, for n >= 2. Tight for the population
// variance (see the header comment).
double variance_sensitivity(const BoundedDomain& domain, std::size_t n);

// Dispatch over the four formulas. Count ignores domain and n.
double sensitivity_for(QueryKind kind, const BoundedDomain& domain,
                       std::size_t n);

// Exhaustive change-one oracle for the closed forms above: enumerates every
// dataset of size n over the grid and every single-element substitution from
// the grid, and returns the largest |f(D) - f(D')| observed. Grid values must
// lie inside the domain. Enumeration is capped at |grid|^n <= 10^6.
double brute_force_sensitivity(QueryKind kind, const BoundedDomain& domain,
                               std::size_t n, std::span<const double> grid);

}  // namespace gramdp

#endif  // GRAMDP_SENSITIVITY_HPP_
