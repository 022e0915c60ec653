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

#include "core/rng.hpp"

#include <bit>
#include <cmath>

namespace dpg {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Stafford variant 13 finalizer.
std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Odd gamma with enough bit transitions, as in SplittableRandom.
std::uint64_t MixGamma(std::uint64_t z) {
  z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
  z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
  z = (z ^ (z >> 33)) | 1ULL;
  if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xAAAAAAAAAAAAAAAAULL;
  return z;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

RngStream::RngStream(std::uint64_t seed)
    : state_(Mix64(seed + kGolden)), gamma_(MixGamma(seed ^ kGolden)) {}

RngStream RngStream::child(std::uint64_t index) const {
  const std::uint64_t s = Mix64(state_ + kGolden * (index + 1));
  const std::uint64_t g = MixGamma(s ^ gamma_);
  return RngStream(s, g);
}

std::uint64_t RngStream::next_u64() {
  state_ += gamma_;
  return Mix64(state_);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::uint64_t RngStream::below(std::uint64_t n) {
  // Rejection-free modulo is biased for huge n; n here is small (indices),
  // so multiply-shift is fine and keeps draws O(1).
  const unsigned __int128 wide =
      static_cast<unsigned __int128>(next_u64()) * n;
  return static_cast<std::uint64_t>(wide >> 64);
}

}  // namespace dpg
