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
// Desk-scale Moreau envelopes and Lasry-Lions smoothing on dense grids,
// restricted to d <= 2 (the inner problems need exhaustive search in
// general). Every value carries a grid-error bound: local Lipschitz
// constant of the inner objective times half the grid spacing.

#ifndef DPGOLDSTEIN_CORE_LLSMOOTH_HPP_
#define DPGOLDSTEIN_CORE_LLSMOOTH_HPP_

#include <functional>
#include <vector>

#include "core/vecops.hpp"

namespace dpg {

using ScalarFn = std::function<double(const Vec&)>;

struct GridSpec {
  Vec lo;
  Vec hi;
  int points_per_axis = 64;  // at least 64

  void validate() const;  // d <= 2, lo < hi, resolution floor
  int dim() const { return static_cast<int>(lo.size()); }
  double spacing(int axis) const;
  double max_spacing() const;
};

struct GridValue {
  double value = 0.0;
  double tol = 0.0;  // grid-error bound for this value
};

// min_y [ h(y) + |y - x|^2 / (2 lambda) ] over grid points near x. Requires
// x inside the box with margin 3 * lambda * lipschitz on every axis.
GridValue moreau_envelope(const ScalarFn& h, const Vec& x, double lambda,
                          double lipschitz, const GridSpec& grid);

// Double-envelope smoothing -M_lambda(-M_{2 lambda}(h)) evaluated on grids.
// Precomputes the inner envelope once; value() queries are window scans.
class LasryLionsGrid {
 public:
  LasryLionsGrid(ScalarFn h, double lambda, double lipschitz, GridSpec grid);

  GridValue value(const Vec& x) const;
  double tolerance() const { return tol_total_; }
  const GridSpec& grid() const { return grid_; }
  double lambda() const { return lambda_; }
  double lipschitz() const { return lipschitz_; }

  // Central finite-difference gradient at a grid point (step = spacing).
  Vec fd_gradient(const Vec& x) const;

 private:
  double inner_at(const std::vector<int>& idx) const;

  ScalarFn h_;
  double lambda_ = 0.0;
  double lipschitz_ = 0.0;
  GridSpec grid_;
  std::vector<double> inner_;  // M_{2 lambda}(h) on the full grid
  double tol_inner_ = 0.0;
  double tol_total_ = 0.0;
};

GridValue ll_value(const ScalarFn& h, const Vec& x, double lambda,
                   double lipschitz, const GridSpec& grid);

}  // namespace dpg

#endif  // DPGOLDSTEIN_CORE_LLSMOOTH_HPP_
