// Copyright 2026 The dpgoldstein Authors
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

#ifndef DPGOLDSTEIN_CORE_RNG_HPP_
#define DPGOLDSTEIN_CORE_RNG_HPP_

#include <cstdint>

namespace dpg {

// Splittable counter-based random stream (SplitMix64 with per-stream gamma,
// after Java's SplittableRandom). Every consumer of randomness receives its
// own stream; child(i) is a pure function of the current stream state and i,
// so work fanned out over children is bit-reproducible regardless of
// evaluation order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  // Deterministically derives an independent child stream. Does not advance
  // this stream.
  RngStream child(std::uint64_t index) const;

  std::uint64_t next_u64();

  // Uniform on [0, 1).
  double uniform();

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_open();

  // Standard normal via Box-Muller. Consumes exactly two uniforms per call
  // (no cached spare), so the draw count per call is fixed.
  double normal();

  // Uniform integer in [0, n). Requires n >= 1.
  std::uint64_t below(std::uint64_t n);

 private:
  RngStream(std::uint64_t state, std::uint64_t gamma)
      : state_(state), gamma_(gamma) {}

  std::uint64_t state_;
  std::uint64_t gamma_;
};

}  // namespace dpg

#endif  // DPGOLDSTEIN_CORE_RNG_HPP_
