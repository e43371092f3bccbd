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

#include "gramdp/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gramdp {
namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

void require_finite_nonneg_sensitivity(double sensitivity, const char* who) {
  if (!(sensitivity >= 0.0) || !std::isfinite(sensitivity)) {
    throw Error(Errc::invalid_argument,
                std::string(who) + ": sensitivity must be finite and >= 0");
  }
}

}  // namespace

NoiseScale::NoiseScale(double b) : b_(b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw Error(Errc::invalid_argument,
                "NoiseScale: b must be finite and > 0, got " +
                    std::to_string(b));
  }
}

PrivacyParams::PrivacyParams(double epsilon, double delta)
    : epsilon_(epsilon), delta_(delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(Errc::invalid_argument,
                "PrivacyParams: epsilon must be finite and > 0, got " +
                    std::to_string(epsilon));
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw Error(Errc::invalid_argument,
                "PrivacyParams: delta must lie in [0, 1), got " +
                    std::to_string(delta));
  }
}

OutputRange::OutputRange(double lo_in, double hi_in) : lo(lo_in), hi(hi_in) {
  if (!(lo <= hi)) {
    throw Error(Errc::invalid_argument,
                "OutputRange: lo must not exceed hi, got [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

double sample_laplace(NoiseScale scale, RngStream& rng) {
  const double u = rng.next_open01();
  const double centered = u - 0.5;
  // sgn(0) == 0, so u == 0.5 yields the median exactly.
  return -scale.value() * sign_of(centered) *
         std::log(1.0 - 2.0 * std::abs(centered));
}

double laplace_mechanism(double true_value, double sensitivity,
                         const PrivacyParams& params, RngStream& rng) {
  require_finite_nonneg_sensitivity(sensitivity, "laplace_mechanism");
  if (params.delta() != 0.0) {
    throw Error(Errc::invalid_argument,
                "laplace_mechanism: delta must be 0 (use gaussian_mechanism "
                "for approximate DP)");
  }
  if (sensitivity == 0.0) {
    return true_value;  // deterministic release, no draw consumed
  }
  return true_value +
         sample_laplace(NoiseScale(sensitivity / params.epsilon()), rng);
}

double bounded_laplace_mechanism(double true_value, double sensitivity,
                                 const PrivacyParams& params,
                                 const OutputRange& range, RngStream& rng) {
  const double noisy = laplace_mechanism(true_value, sensitivity, params, rng);
  return std::clamp(noisy, range.lo, range.hi);
}

double gaussian_sigma(const PrivacyParams& params, double l2_sensitivity) {
  require_finite_nonneg_sensitivity(l2_sensitivity, "gaussian_sigma");
  if (params.delta() <= 0.0) {
    throw Error(Errc::invalid_argument,
                "gaussian_sigma: delta must be > 0 (the Gaussian mechanism "
                "cannot give pure epsilon-DP)");
  }
  if (!(params.epsilon() < 1.0)) {
    throw Error(Errc::invalid_argument,
                "gaussian_sigma: this calibration requires epsilon in (0, 1), "
                "got " + std::to_string(params.epsilon()));
  }
  return l2_sensitivity * std::sqrt(2.0 * std::log(1.25 / params.delta())) /
         params.epsilon();
}

double gaussian_mechanism(double true_value, double l2_sensitivity,
                          const PrivacyParams& params, RngStream& rng) {
  const double sigma = gaussian_sigma(params, l2_sensitivity);
  if (sigma == 0.0) {
    return true_value;
  }
  const double u1 = rng.next_open01();
  const double u2 = rng.next_open01();
  const double normal =
      std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return true_value + sigma * normal;
}

double response_truth_probability(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(Errc::invalid_argument,
                "response_truth_probability: epsilon must be finite and >= 0");
  }
  // 1/(1 + e^-eps) == e^eps/(1 + e^eps), without overflowing for large eps.
  return 1.0 / (1.0 + std::exp(-epsilon));
}

int randomized_response(int true_bit, const PrivacyParams& params,
                        RngStream& rng) {
  if (true_bit != 0 && true_bit != 1) {
    throw Error(Errc::invalid_argument,
                "randomized_response: input must be 0 or 1, got " +
                    std::to_string(true_bit));
  }
  if (params.delta() != 0.0) {
    throw Error(Errc::invalid_argument,
                "randomized_response: delta must be 0");
  }
  const double p = response_truth_probability(params.epsilon());
  return rng.next_open01() < p ? true_bit : 1 - true_bit;
}

std::vector<double> exponential_probabilities(std::span<const double> utilities,
                                              double utility_sensitivity,
                                              const PrivacyParams& params) {
  if (utilities.empty()) {
    throw Error(Errc::invalid_argument,
                "exponential_probabilities: utility list is empty");
  }
  if (!(utility_sensitivity > 0.0) || !std::isfinite(utility_sensitivity)) {
    throw Error(Errc::invalid_argument,
                "exponential_probabilities: utility sensitivity must be "
                "finite and > 0");
  }
  if (params.delta() != 0.0) {
    throw Error(Errc::invalid_argument,
                "exponential_probabilities: delta must be 0");
  }
  const double max_utility = *std::max_element(utilities.begin(),
                                               utilities.end());
  std::vector<double> probabilities(utilities.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    // Max-shift keeps every exponent <= 0, so nothing overflows.
    probabilities[i] = std::exp(params.epsilon() * (utilities[i] - max_utility) /
                                (2.0 * utility_sensitivity));
    norm += probabilities[i];
  }
  for (double& p : probabilities) {
    p /= norm;
  }
  return probabilities;
}

std::size_t exponential_mechanism_index(std::span<const double> utilities,
                                        double utility_sensitivity,
                                        const PrivacyParams& params,
                                        RngStream& rng) {
  const std::vector<double> probabilities =
      exponential_probabilities(utilities, utility_sensitivity, params);
  const double u = rng.next_open01();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    cumulative += probabilities[i];
    if (u < cumulative) {
      return i;
    }
  }
  return probabilities.size() - 1;  // u landed in the rounding slack
}

}  // namespace gramdp
