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
// Randomized-smoothing gradient estimators. Both estimators target the
// gradient of the ball average f_alpha(x) = E_{y ~ B_alpha} f(x + y):
//
//   zero-order:  (1/m) sum_j (d / 2 alpha)(f(x + alpha y_j) -
//                f(x - alpha y_j)) y_j,   y_j uniform on the unit sphere
//   first-order: (1/m) sum_j grad f(x + u_j),  u_j uniform in B_alpha
//
// Direction j is drawn from stream.child(j), so the m summands can be
// evaluated in any order (or concurrently) with bit-identical results.

#ifndef DPGOLDSTEIN_CORE_SMOOTHING_HPP_
#define DPGOLDSTEIN_CORE_SMOOTHING_HPP_

#include "core/losses.hpp"
#include "core/rng.hpp"
#include "core/vecops.hpp"

namespace dpg {

struct SmoothingParams {
  double alpha = 0.0;   // smoothing radius
  std::int64_t m = 1;   // directions per estimate

  void validate() const;  // alpha > 0, m >= 1
};

// Unit vector, rotation invariant (normalized standard Gaussian).
Vec sample_sphere(int d, RngStream& stream);

// Uniform on the solid ball of the given radius.
Vec sample_ball(double radius, int d, RngStream& stream);

// Two-point zero-order estimate; uses exactly 2 m value queries.
// Each summand has norm at most L * d.
Vec zo_estimate(const ComponentLoss& loss, std::span<const double> x,
                const Sample& xi, const SmoothingParams& params,
                RngStream stream);

// Averaged-gradient estimate over ball perturbations; norm at most L.
Vec fo_estimate(const ComponentLoss& loss, std::span<const double> x,
                const Sample& xi, const SmoothingParams& params,
                RngStream stream);

}  // namespace dpg

#endif  // DPGOLDSTEIN_CORE_SMOOTHING_HPP_
