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

#include "core/llsmooth.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "core/errors.hpp"

namespace dpg {
namespace {

// Error of a grid minimization of f(y) + |y-x|^2 / (2 mu) when the true
// minimizer sits within mu * L of x: nearest grid point is s/2 per axis
// away and the objective is locally (2L + s/mu)-Lipschitz there.
double grid_tol(double lipschitz, double spacing, double mu, int d) {
  return (2.0 * lipschitz + spacing / mu) *
         (spacing * std::sqrt(static_cast<double>(d)) / 2.0);
}

struct Window {
  std::vector<int> lo;
  std::vector<int> hi;  // inclusive
};

}  // namespace

void GridSpec::validate() const {
  if (lo.empty() || lo.size() > 2)
    throw ConfigError("grid dimension must be 1 or 2");
  if (lo.size() != hi.size()) throw ConfigError("grid bounds dim mismatch");
  if (points_per_axis < 64)
    throw ConfigError("grid resolution must be at least 64 points per axis");
  for (std::size_t a = 0; a < lo.size(); ++a)
    if (!(lo[a] < hi[a])) throw ConfigError("grid bounds must satisfy lo < hi");
}

double GridSpec::spacing(int axis) const {
  return (hi[static_cast<std::size_t>(axis)] -
          lo[static_cast<std::size_t>(axis)]) /
         static_cast<double>(points_per_axis - 1);
}

double GridSpec::max_spacing() const {
  double s = 0.0;
  for (int a = 0; a < dim(); ++a) s = std::max(s, spacing(a));
  return s;
}

namespace {

double coord(const GridSpec& g, int axis, int i) {
  return g.lo[static_cast<std::size_t>(axis)] +
         static_cast<double>(i) * g.spacing(axis);
}

Window window_around(const GridSpec& g, const Vec& x, double halfwidth) {
  Window w;
  for (int a = 0; a < g.dim(); ++a) {
    const double s = g.spacing(a);
    int lo_i = static_cast<int>(
        std::floor((x[static_cast<std::size_t>(a)] - halfwidth -
                    g.lo[static_cast<std::size_t>(a)]) /
                   s));
    int hi_i = static_cast<int>(
        std::ceil((x[static_cast<std::size_t>(a)] + halfwidth -
                   g.lo[static_cast<std::size_t>(a)]) /
                  s));
    lo_i = std::clamp(lo_i, 0, g.points_per_axis - 1);
    hi_i = std::clamp(hi_i, 0, g.points_per_axis - 1);
    w.lo.push_back(lo_i);
    w.hi.push_back(hi_i);
  }
  return w;
}

void require_margin(const GridSpec& g, const Vec& x, double margin) {
  if (x.size() != g.lo.size())
    throw InvalidArgumentError("query dimension mismatch");
  for (int a = 0; a < g.dim(); ++a) {
    const std::size_t ai = static_cast<std::size_t>(a);
    if (x[ai] < g.lo[ai] + margin || x[ai] > g.hi[ai] - margin)
      throw InvalidArgumentError(
          "query point outside grid box minus margin");
  }
}

// Scans f over the window and returns the minimum. f receives the grid
// point coordinates.
template <typename F>
double window_min(const GridSpec& g, const Window& w, F&& f) {
  double best = std::numeric_limits<double>::infinity();
  Vec y(static_cast<std::size_t>(g.dim()));
  if (g.dim() == 1) {
    for (int i = w.lo[0]; i <= w.hi[0]; ++i) {
      y[0] = coord(g, 0, i);
      best = std::min(best, f(y));
    }
  } else {
    for (int i = w.lo[0]; i <= w.hi[0]; ++i) {
      y[0] = coord(g, 0, i);
      for (int j = w.lo[1]; j <= w.hi[1]; ++j) {
        y[1] = coord(g, 1, j);
        best = std::min(best, f(y));
      }
    }
  }
  return best;
}

}  // namespace

GridValue moreau_envelope(const ScalarFn& h, const Vec& x, double lambda,
                          double lipschitz, const GridSpec& grid) {
  grid.validate();
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  require_margin(grid, x, 3.0 * lambda * lipschitz);
  const double s = grid.max_spacing();
  const Window w =
      window_around(grid, x, lambda * lipschitz + 2.0 * s);
  const double value = window_min(grid, w, [&](const Vec& y) {
    const double r = dist(y, x);
    return h(y) + r * r / (2.0 * lambda);
  });
  return {value, grid_tol(lipschitz, s, lambda, grid.dim())};
}

LasryLionsGrid::LasryLionsGrid(ScalarFn h, double lambda, double lipschitz,
                               GridSpec grid)
    : h_(std::move(h)), lambda_(lambda), lipschitz_(lipschitz),
      grid_(std::move(grid)) {
  grid_.validate();
  if (!(lambda_ > 0.0)) throw ConfigError("lambda must be positive");
  const double s = grid_.max_spacing();
  tol_inner_ = grid_tol(lipschitz_, s, 2.0 * lambda_, grid_.dim());
  tol_total_ = tol_inner_ + grid_tol(lipschitz_, s, lambda_, grid_.dim());

  // Inner envelope M_{2 lambda}(h) on the whole grid; minimizers sit within
  // 2 lambda L of the query.
  const double inner_half = 2.0 * lambda_ * lipschitz_ + 2.0 * s;
  const int G = grid_.points_per_axis;
  const std::size_t total = grid_.dim() == 1
                                ? static_cast<std::size_t>(G)
                                : static_cast<std::size_t>(G) * G;
  inner_.resize(total);
  Vec z(static_cast<std::size_t>(grid_.dim()));
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (grid_.dim() == 1) {
      z[0] = coord(grid_, 0, static_cast<int>(flat));
    } else {
      z[0] = coord(grid_, 0, static_cast<int>(flat) / G);
      z[1] = coord(grid_, 1, static_cast<int>(flat) % G);
    }
    const Window w = window_around(grid_, z, inner_half);
    inner_[flat] = window_min(grid_, w, [&](const Vec& y) {
      const double r = dist(y, z);
      return h_(y) + r * r / (4.0 * lambda_);
    });
  }
}

double LasryLionsGrid::inner_at(const std::vector<int>& idx) const {
  if (grid_.dim() == 1) return inner_[static_cast<std::size_t>(idx[0])];
  return inner_[static_cast<std::size_t>(idx[0]) *
                    static_cast<std::size_t>(grid_.points_per_axis) +
                static_cast<std::size_t>(idx[1])];
}

GridValue LasryLionsGrid::value(const Vec& x) const {
  require_margin(grid_, x, 3.0 * lambda_ * lipschitz_);
  const double s = grid_.max_spacing();
  const Window w = window_around(grid_, x, lambda_ * lipschitz_ + 2.0 * s);
  // max_z [ M_{2 lambda}(h)(z) - |z - x|^2 / (2 lambda) ]
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> idx(static_cast<std::size_t>(grid_.dim()));
  Vec z(static_cast<std::size_t>(grid_.dim()));
  if (grid_.dim() == 1) {
    for (int i = w.lo[0]; i <= w.hi[0]; ++i) {
      idx[0] = i;
      z[0] = coord(grid_, 0, i);
      const double r = dist(z, x);
      best = std::max(best, inner_at(idx) - r * r / (2.0 * lambda_));
    }
  } else {
    for (int i = w.lo[0]; i <= w.hi[0]; ++i) {
      idx[0] = i;
      z[0] = coord(grid_, 0, i);
      for (int j = w.lo[1]; j <= w.hi[1]; ++j) {
        idx[1] = j;
        z[1] = coord(grid_, 1, j);
        const double r = dist(z, x);
        best = std::max(best, inner_at(idx) - r * r / (2.0 * lambda_));
      }
    }
  }
  return {best, tol_total_};
}

Vec LasryLionsGrid::fd_gradient(const Vec& x) const {
  Vec g(x.size());
  for (int a = 0; a < grid_.dim(); ++a) {
    const double s = grid_.spacing(a);
    Vec plus = x, minus = x;
    plus[static_cast<std::size_t>(a)] += s;
    minus[static_cast<std::size_t>(a)] -= s;
    g[static_cast<std::size_t>(a)] =
        (value(plus).value - value(minus).value) / (2.0 * s);
  }
  return g;
}

GridValue ll_value(const ScalarFn& h, const Vec& x, double lambda,
                   double lipschitz, const GridSpec& grid) {
  LasryLionsGrid ll(h, lambda, lipschitz, grid);
  return ll.value(x);
}

}  // namespace dpg
