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

#include "gramdp/rng.hpp"

#include <utility>

#include "gramdp/errors.hpp"

namespace gramdp {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer (Steele, Lea, Flood 2014). Full avalanche.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : state_(seed) {}

RngStream RngStream::from_uniforms(std::vector<double> uniforms) {
  for (double u : uniforms) {
    if (!(u > 0.0 && u < 1.0)) {
      throw Error(Errc::invalid_argument,
                  "RngStream::from_uniforms: scripted value " +
                      std::to_string(u) + " is outside (0, 1)");
    }
  }
  RngStream rng;
  rng.scripted_mode_ = true;
  rng.scripted_ = std::move(uniforms);
  return rng;
}

double RngStream::next_open01() {
  if (scripted_mode_) {
    if (scripted_pos_ >= scripted_.size()) {
      throw Error(Errc::invalid_argument,
                  "RngStream: scripted uniform stream exhausted");
    }
    return scripted_[scripted_pos_++];
  }
  double u;
  do {
    state_ += kGolden;
    // 53 high bits -> [0, 1); exactly representable, identical everywhere.
    u = static_cast<double>(mix64(state_) >> 11) * 0x1.0p-53;
  } while (u <= 0.0 || u >= 1.0);
  return u;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t lane_a,
                          std::uint64_t lane_b) {
  std::uint64_t h = mix64(master_seed + kGolden);
  h = mix64(h ^ (lane_a + kGolden));
  h = mix64(h ^ (lane_b + 0xD1B54A32D192ED03ull));
  return h;
}

}  // namespace gramdp
