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
//
// Binary-counter (tree) mechanism for privatizing prefix sums. One Gaussian
// vector is drawn per dyadic interval over [1, capacity]; the noise attached
// to prefix t is the sum over the unique dyadic decomposition of [1, t], so
// each prefix touches at most ceil(log2(capacity)) nodes and consecutive
// prefixes share the nodes of their common intervals.

#ifndef DPGOLDSTEIN_CORE_TREE_HPP_
#define DPGOLDSTEIN_CORE_TREE_HPP_

#include <cstdint>
#include <vector>

#include "core/rng.hpp"
#include "core/vecops.hpp"

namespace dpg {

struct DyadicInterval {
  std::int64_t lo = 0;  // 1-based, inclusive
  std::int64_t hi = 0;

  bool operator==(const DyadicInterval&) const = default;
};

// Greedy top-down dyadic decomposition of [1, t]. The returned intervals are
// disjoint, consecutive, and tile [1, t] exactly; the list has at most
// max(1, ceil(log2(capacity))) entries. capacity must be a power of two and
// 1 <= t <= capacity.
std::vector<DyadicInterval> tree_node_intervals(std::int64_t t,
                                                std::int64_t capacity);

// Smallest power of two >= n (n >= 1).
std::int64_t next_pow2(std::int64_t n);

// All node noises are sampled eagerly at construction and never redrawn, so
// repeated queries replay identical vectors. Immutable afterwards; noise()
// is a pure read.
class TreeState {
 public:
  // requested_len is rounded up to the next power of two. sigma >= 0 is the
  // per-node per-coordinate standard deviation.
  TreeState(double sigma, std::int64_t requested_len, int d, RngStream stream);

  std::int64_t capacity() const { return capacity_; }
  double sigma() const { return sigma_; }
  int dim() const { return d_; }
  std::int64_t stored_nodes() const;

  // Sum of the node noises over tree_node_intervals(t, capacity).
  Vec noise(std::int64_t t) const;

  const Vec& node_noise(const DyadicInterval& interval) const;

 private:
  // level l holds intervals of length 2^l, ordered by position.
  std::size_t node_index(const DyadicInterval& interval) const;

  double sigma_ = 0.0;
  std::int64_t capacity_ = 0;
  int d_ = 0;
  std::vector<std::vector<Vec>> levels_;
};

}  // namespace dpg

#endif  // DPGOLDSTEIN_CORE_TREE_HPP_
