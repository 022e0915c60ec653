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

#ifndef DPGOLDSTEIN_CORE_VECOPS_HPP_
#define DPGOLDSTEIN_CORE_VECOPS_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace dpg {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) {
  return std::sqrt(dot(a, a));
}

inline Vec zeros(std::size_t d) { return Vec(d, 0.0); }

// y += c * x
inline void axpy(double c, std::span<const double> x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline Vec scaled(std::span<const double> x, double c) {
  Vec r(x.begin(), x.end());
  for (double& v : r) v *= c;
  return r;
}

inline Vec add(std::span<const double> a, std::span<const double> b) {
  Vec r(a.begin(), a.end());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

inline Vec sub(std::span<const double> a, std::span<const double> b) {
  Vec r(a.begin(), a.end());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

inline double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return std::sqrt(s);
}

}  // namespace dpg

#endif  // DPGOLDSTEIN_CORE_VECOPS_HPP_
