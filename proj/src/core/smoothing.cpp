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

#include "core/smoothing.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace dpg {

void SmoothingParams::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("smoothing radius must be positive");
  if (m < 1) throw ConfigError("estimator batch must be at least 1");
}

Vec sample_sphere(int d, RngStream& stream) {
  if (d < 1) throw InvalidArgumentError("dimension must be at least 1");
  Vec y(static_cast<std::size_t>(d));
  double nrm = 0.0;
  do {
    for (double& v : y) v = stream.normal();
    nrm = norm2(y);
  } while (nrm == 0.0);
  for (double& v : y) v /= nrm;
  return y;
}

Vec sample_ball(double radius, int d, RngStream& stream) {
  if (!(radius > 0.0)) throw InvalidArgumentError("radius must be positive");
  Vec y = sample_sphere(d, stream);
  const double r =
      radius * std::pow(stream.uniform(), 1.0 / static_cast<double>(d));
  for (double& v : y) v *= r;
  return y;
}

Vec zo_estimate(const ComponentLoss& loss, std::span<const double> x,
                const Sample& xi, const SmoothingParams& params,
                RngStream stream) {
  params.validate();
  if (!loss.has_value()) throw UnsupportedError("loss has no value capability");
  const std::size_t d = x.size();
  const double scale =
      static_cast<double>(loss.dim()) / (2.0 * params.alpha);
  Vec acc = zeros(d);
  Vec plus(d), minus(d);
  for (std::int64_t j = 0; j < params.m; ++j) {
    RngStream cs = stream.child(static_cast<std::uint64_t>(j));
    const Vec y = sample_sphere(loss.dim(), cs);
    for (std::size_t i = 0; i < d; ++i) {
      plus[i] = x[i] + params.alpha * y[i];
      minus[i] = x[i] - params.alpha * y[i];
    }
    const double diff = loss.value(plus, xi) - loss.value(minus, xi);
    axpy(scale * diff, y, acc);
  }
  return scaled(acc, 1.0 / static_cast<double>(params.m));
}

Vec fo_estimate(const ComponentLoss& loss, std::span<const double> x,
                const Sample& xi, const SmoothingParams& params,
                RngStream stream) {
  params.validate();
  if (!loss.has_gradient())
    throw UnsupportedError("loss has no gradient capability");
  const std::size_t d = x.size();
  Vec acc = zeros(d);
  Vec shifted(d);
  for (std::int64_t j = 0; j < params.m; ++j) {
    RngStream cs = stream.child(static_cast<std::uint64_t>(j));
    const Vec u = sample_ball(params.alpha, loss.dim(), cs);
    for (std::size_t i = 0; i < d; ++i) shifted[i] = x[i] + u[i];
    const Vec g = loss.gradient(shifted, xi);
    axpy(1.0, g, acc);
  }
  return scaled(acc, 1.0 / static_cast<double>(params.m));
}

}  // namespace dpg
