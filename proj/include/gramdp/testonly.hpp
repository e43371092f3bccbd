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
// Test-only access to pre-release query internals. Nothing in this header
// may be used on a release path: the values returned here are NOT
// differentially private (no output clamp, no rounding), and statistical
// tests need exactly that to compare the noise against its analytic
// distribution.

#ifndef GRAMDP_TESTONLY_HPP_
#define GRAMDP_TESTONLY_HPP_

#include <span>

#include "gramdp/queries.hpp"
#include "gramdp/rng.hpp"

namespace gramdp::testonly {

// The noisy query value before output clamping and before count rounding:
// plain aggregate (inputs clamped per spec.clamp_inputs) plus one Laplace
// draw at scale sensitivity/epsilon. Consumes the same single uniform as the
// released query, so seeded trials line up one-to-one with run_query.
double unclamped_query_value(std::span<const double> column,
                             const QuerySpec& spec, RngStream& rng);

}  // namespace gramdp::testonly

#endif  // GRAMDP_TESTONLY_HPP_
