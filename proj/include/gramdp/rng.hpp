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

#ifndef GRAMDP_RNG_HPP_
#define GRAMDP_RNG_HPP_

#include <cstdint>
#include <vector>

namespace gramdp {

// Deterministic uniform source backed by splitmix64. Identical seeds yield
// identical streams on every platform (integer state, exact float scaling).
//
// Every noise mechanism draws from one of these; there is no hidden global
// generator. Each thread must own its own stream.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  // Stream that replays the given uniforms verbatim. Used to pin mechanisms
  // to closed-form values in tests. Draws past the end are an error, as is
  // any scripted value outside (0, 1).
  static RngStream from_uniforms(std::vector<double> uniforms);

  // Uniform draw from the open interval (0, 1). An exact 0 or 1 is redrawn
  // so downstream log() calls stay finite.
  double next_open01();

 private:
  RngStream() = default;

  std::uint64_t state_ = 0;
  bool scripted_mode_ = false;
  std::vector<double> scripted_;
  std::size_t scripted_pos_ = 0;
};

// Mixes (master_seed, lane_a, lane_b) into the seed of an independent
// substream. Sweeps derive one stream per (epsilon index, iteration index)
// so trials can run in any order, or concurrently, without changing results.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t lane_a,
                          std::uint64_t lane_b);

}  // namespace gramdp

#endif  // GRAMDP_RNG_HPP_
