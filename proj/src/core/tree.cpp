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

#include "core/tree.hpp"

#include <bit>

#include "core/errors.hpp"

namespace dpg {

std::int64_t next_pow2(std::int64_t n) {
  if (n < 1) throw InvalidArgumentError("length must be at least 1");
  return static_cast<std::int64_t>(
      std::bit_ceil(static_cast<std::uint64_t>(n)));
}

std::vector<DyadicInterval> tree_node_intervals(std::int64_t t,
                                                std::int64_t capacity) {
  if (capacity < 1 || std::popcount(static_cast<std::uint64_t>(capacity)) != 1)
    throw InvalidArgumentError("capacity must be a positive power of two");
  if (t < 1 || t > capacity)
    throw InvalidArgumentError("index out of range: t=" + std::to_string(t) +
                               ", capacity=" + std::to_string(capacity));
  std::vector<DyadicInterval> out;
  std::int64_t k = 0;
  for (std::int64_t len = capacity; len >= 1 && k < t; len /= 2) {
    if (k + len <= t) {
      out.push_back({k + 1, k + len});
      k += len;
    }
  }
  return out;
}

TreeState::TreeState(double sigma, std::int64_t requested_len, int d,
                     RngStream stream)
    : sigma_(sigma), d_(d) {
  if (!(sigma >= 0.0)) throw ConfigError("noise scale must be >= 0");
  if (d < 1) throw ConfigError("dimension must be at least 1");
  capacity_ = next_pow2(requested_len);
  std::uint64_t node_counter = 0;
  for (std::int64_t len = 1; len <= capacity_; len *= 2) {
    std::vector<Vec> level;
    const std::int64_t count = capacity_ / len;
    level.reserve(static_cast<std::size_t>(count));
    for (std::int64_t j = 0; j < count; ++j) {
      RngStream ns = stream.child(node_counter++);
      Vec zeta(static_cast<std::size_t>(d));
      for (double& v : zeta) v = sigma_ * ns.normal();
      level.push_back(std::move(zeta));
    }
    levels_.push_back(std::move(level));
  }
}

std::int64_t TreeState::stored_nodes() const {
  std::int64_t total = 0;
  for (const auto& level : levels_)
    total += static_cast<std::int64_t>(level.size());
  return total;
}

std::size_t TreeState::node_index(const DyadicInterval& interval) const {
  const std::int64_t len = interval.hi - interval.lo + 1;
  if (len < 1 || std::popcount(static_cast<std::uint64_t>(len)) != 1 ||
      (interval.lo - 1) % len != 0 || interval.hi > capacity_) {
    throw InvalidArgumentError("not a dyadic interval of this tree");
  }
  return static_cast<std::size_t>((interval.lo - 1) / len);
}

const Vec& TreeState::node_noise(const DyadicInterval& interval) const {
  const std::int64_t len = interval.hi - interval.lo + 1;
  const int level = std::countr_zero(static_cast<std::uint64_t>(len));
  return levels_[static_cast<std::size_t>(level)][node_index(interval)];
}

Vec TreeState::noise(std::int64_t t) const {
  Vec out = zeros(static_cast<std::size_t>(d_));
  for (const DyadicInterval& iv : tree_node_intervals(t, capacity_))
    axpy(1.0, node_noise(iv), out);
  return out;
}

}  // namespace dpg
