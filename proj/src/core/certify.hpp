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
// Stationarity certification: the minimum-norm point of the convex hull of
// gradients sampled in a ball around the candidate. A certificate is an
// upper bound by construction (the sampled hull is contained in the full
// hull, and enlarging the hull can only lower the true minimum), so claims
// are always phrased as "certified norm <= threshold".

#ifndef DPGOLDSTEIN_CORE_CERTIFY_HPP_
#define DPGOLDSTEIN_CORE_CERTIFY_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "core/losses.hpp"
#include "core/rng.hpp"
#include "core/vecops.hpp"

namespace dpg {

struct MinNormResult {
  Vec point;          // min-norm convex combination
  Vec coefficients;   // simplex weights, one per input vector
  double norm = 0.0;
  int iterations = 0;
};

// Wolfe's minimum-norm-point algorithm over the convex hull of `vectors`.
// Terminates when the duality gap <x,x> - min_i <x,v_i> drops below
// tol * max(1, <x,x>), with an iteration cap of 1000 * k.
MinNormResult min_norm_point(const std::vector<Vec>& vectors,
                             double tol = 1e-9);

// A Clarke gradient (or surrogate) of the certified function at a point.
using GradientSource = std::function<Vec(const Vec&)>;

struct Certificate {
  Vec center;
  double radius = 0.0;
  std::vector<Vec> points;     // center first, then ball samples
  std::vector<Vec> gradients;
  Vec coefficients;
  double norm = 0.0;
  double tol = 0.0;
};

// Samples k points uniformly from the ball around x (plus x itself),
// collects gradients, and solves for the min-norm hull point. Spot-checks
// that the achieved norm does not exceed the min-norm over sampled
// prefixes (the hull only grows).
Certificate goldstein_certificate(const GradientSource& source, const Vec& x,
                                  double alpha, int k_samples,
                                  RngStream stream, double tol = 1e-9);

// Mean component gradient over a dataset: the empirical objective's
// gradient field.
GradientSource empirical_gradient(const ComponentLoss& loss,
                                  const Dataset& dataset);

// Mean component gradient over `size` fresh samples: a population
// surrogate. Deterministic for a fixed seed.
GradientSource population_surrogate_gradient(const ComponentLoss& loss,
                                             std::int64_t size,
                                             std::uint64_t seed);

}  // namespace dpg

#endif  // DPGOLDSTEIN_CORE_CERTIFY_HPP_
