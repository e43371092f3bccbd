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

#ifndef GRAMDP_MECHANISMS_HPP_
#define GRAMDP_MECHANISMS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "gramdp/errors.hpp"
#include "gramdp/rng.hpp"

namespace gramdp {

// Laplace scale parameter b, in the units of the query output. b = delta/eps.
class NoiseScale {
 public:
  explicit NoiseScale(double b);
  double value() const { return b_; }

 private:
  double b_;
};

// epsilon > 0; delta in [0, 1). delta == 0 means pure epsilon-DP.
class PrivacyParams {
 public:
  explicit PrivacyParams(double epsilon, double delta = 0.0);
  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  bool operator==(const PrivacyParams&) const = default;

 private:
  double epsilon_;
  double delta_;
};

// Feasible output interval for the bounded Laplace variant.
struct OutputRange {
  OutputRange(double lo_in, double hi_in);
  double lo;
  double hi;
};

// One Laplace(0, b) draw by inverse-CDF from a single uniform:
//   x = -b * sgn(u - 0.5) * ln(1 - 2|u - 0.5|)
// Mean 0, variance 2b^2. A single uniform per draw keeps seeded values
// reproducible and lets tests pin closed-form outputs.
double sample_laplace(NoiseScale scale, RngStream& rng);

// true_value + Laplace(0, sensitivity/epsilon). Pure epsilon-DP for any query
// with the given l1 sensitivity. sensitivity == 0 releases the value exactly
// (no draw is consumed). Rejects delta != 0 and negative sensitivity.
double laplace_mechanism(double true_value, double sensitivity,
                         const PrivacyParams& params, RngStream& rng);

// laplace_mechanism followed by clamping into [range.lo, range.hi]. The clamp
// is data-independent post-processing, so the epsilon-DP guarantee carries
// over unchanged. This is NOT a truncated-Laplace sampler: noise is drawn
// from the full distribution and the released value is clamped afterwards.
double bounded_laplace_mechanism(double true_value, double sensitivity,
                                 const PrivacyParams& params,
                                 const OutputRange& range, RngStream& rng);

// sigma = l2_sensitivity * sqrt(2 ln(1.25/delta)) / epsilon. The classic
// analytic calibration, valid for epsilon < 1; inputs outside (0, 1) are
// rejected rather than silently under-protected. Requires 0 < delta < 1.
double gaussian_sigma(const PrivacyParams& params, double l2_sensitivity);

// true_value + N(0, sigma^2) for (epsilon, delta)-DP. Normal draws come from
// Box-Muller (cosine branch, two uniforms per draw) so seeded outputs are
// reproducible. l2_sensitivity == 0 releases the value exactly.
double gaussian_mechanism(double true_value, double l2_sensitivity,
                          const PrivacyParams& params, RngStream& rng);

// Probability that randomized response reports the truth:
//   p = e^eps / (1 + e^eps), computed as 1 / (1 + e^-eps).
// Accepts epsilon >= 0; p(0) = 1/2 is the zero-information coin.
double response_truth_probability(double epsilon);

// Reports true_bit with probability e^eps/(1+e^eps), else the flipped bit.
// Satisfies epsilon-DP exactly: p/(1-p) = e^eps. Rejects non-binary input
// and delta != 0.
int randomized_response(int true_bit, const PrivacyParams& params,
                        RngStream& rng);

// Selection probabilities of the exponential mechanism:
//   p_i proportional to exp(eps * u_i / (2 * utility_sensitivity)),
// computed with a max-shift so large utilities cannot overflow. The result
// sums to 1 and is invariant under adding a constant to all utilities.
std::vector<double> exponential_probabilities(std::span<const double> utilities,
                                              double utility_sensitivity,
                                              const PrivacyParams& params);

// Samples an index from exponential_probabilities with one uniform draw.
std::size_t exponential_mechanism_index(std::span<const double> utilities,
                                        double utility_sensitivity,
                                        const PrivacyParams& params,
                                        RngStream& rng);

// Convenience overload returning the selected candidate.
template <typename T>
const T& exponential_mechanism(std::span<const T> candidates,
                               std::span<const double> utilities,
                               double utility_sensitivity,
                               const PrivacyParams& params, RngStream& rng) {
  if (candidates.empty()) {
    throw Error(Errc::invalid_argument,
                "exponential_mechanism: candidate list is empty");
  }
  if (candidates.size() != utilities.size()) {
    throw Error(Errc::invalid_argument,
                "exponential_mechanism: candidates and utilities differ in "
                "length");
  }
  return candidates[exponential_mechanism_index(utilities, utility_sensitivity,
                                                params, rng)];
}

}  // namespace gramdp

#endif  // GRAMDP_MECHANISMS_HPP_
