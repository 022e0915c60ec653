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

#include "core/certify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <memory>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/smoothing.hpp"

namespace dpg {
namespace {

// Coefficients (free sign, summing to one) minimizing |sum a_i v_i| over the
// affine hull of the active set, via the KKT system [G 1; 1' 0].
std::vector<double> affine_minimizer(const std::vector<const Vec*>& active) {
  const int r = static_cast<int>(active.size());
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(r + 1, r + 1);
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) {
      const double g = dot(*active[static_cast<std::size_t>(i)],
                           *active[static_cast<std::size_t>(j)]);
      kkt(i, j) = g;
      kkt(j, i) = g;
    }
    kkt(i, r) = 1.0;
    kkt(r, i) = 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(r + 1);
  rhs(r) = 1.0;
  Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
  if (!sol.allFinite() || (kkt * sol - rhs).norm() > 1e-8 * (1.0 + rhs.norm())) {
    // Affinely dependent active set: regularize.
    for (int i = 0; i < r; ++i) kkt(i, i) += 1e-12;
    sol = kkt.fullPivLu().solve(rhs);
  }
  std::vector<double> a(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) a[static_cast<std::size_t>(i)] = sol(i);
  return a;
}

}  // namespace

MinNormResult min_norm_point(const std::vector<Vec>& vectors, double tol) {
  if (vectors.empty())
    throw InvalidArgumentError("min_norm_point needs at least one vector");
  const std::size_t k = vectors.size();
  const std::size_t d = vectors[0].size();
  for (const Vec& v : vectors)
    if (v.size() != d) throw InvalidArgumentError("mixed vector dimensions");

  // Start from the shortest input vector.
  std::size_t start = 0;
  for (std::size_t i = 1; i < k; ++i)
    if (dot(vectors[i], vectors[i]) < dot(vectors[start], vectors[start]))
      start = i;

  std::vector<std::size_t> active{start};
  std::vector<double> lambda{1.0};
  Vec x = vectors[start];
  MinNormResult result;
  const int cap = 1000 * static_cast<int>(k);
  int iter = 0;

  auto rebuild_x = [&] {
    x = zeros(d);
    for (std::size_t i = 0; i < active.size(); ++i)
      axpy(lambda[i], vectors[active[i]], x);
  };

  for (; iter < cap; ++iter) {
    // Most violating vertex.
    std::size_t best = 0;
    double best_ip = dot(x, vectors[0]);
    for (std::size_t i = 1; i < k; ++i) {
      const double ip = dot(x, vectors[i]);
      if (ip < best_ip) {
        best = i;
        best_ip = ip;
      }
    }
    const double xx = dot(x, x);
    if (xx - best_ip <= tol * std::max(1.0, xx)) break;
    if (std::find(active.begin(), active.end(), best) != active.end()) break;
    active.push_back(best);
    lambda.push_back(0.0);

    // Minor cycles: move to the affine minimizer, dropping vertices that
    // leave the simplex.
    for (;;) {
      std::vector<const Vec*> pts;
      pts.reserve(active.size());
      for (std::size_t idx : active) pts.push_back(&vectors[idx]);
      std::vector<double> a = affine_minimizer(pts);
      const double min_a = *std::min_element(a.begin(), a.end());
      if (min_a > -1e-12) {
        for (std::size_t i = 0; i < a.size(); ++i)
          lambda[i] = std::max(0.0, a[i]);
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 0.0 && lambda[i] - a[i] > 0.0)
          theta = std::min(theta, lambda[i] / (lambda[i] - a[i]));
      }
      for (std::size_t i = 0; i < a.size(); ++i)
        lambda[i] = (1.0 - theta) * lambda[i] + theta * a[i];
      std::vector<std::size_t> next_active;
      std::vector<double> next_lambda;
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (lambda[i] > 1e-12) {
          next_active.push_back(active[i]);
          next_lambda.push_back(lambda[i]);
        }
      }
      if (next_active.empty()) {
        next_active.push_back(active[0]);
        next_lambda.push_back(1.0);
      }
      active = std::move(next_active);
      lambda = std::move(next_lambda);
      if (active.size() == 1) break;
    }

    // Renormalize and recompute x from scratch.
    double total = 0.0;
    for (double l : lambda) total += l;
    for (double& l : lambda) l /= total;
    rebuild_x();
  }

  result.iterations = iter;
  result.point = x;
  result.norm = norm2(x);
  result.coefficients = zeros(k);
  for (std::size_t i = 0; i < active.size(); ++i)
    result.coefficients[active[i]] += lambda[i];
  return result;
}

Certificate goldstein_certificate(const GradientSource& source, const Vec& x,
                                  double alpha, int k_samples,
                                  RngStream stream, double tol) {
  if (k_samples < 1)
    throw InvalidArgumentError("need at least one ball sample");
  if (!(alpha > 0.0)) throw InvalidArgumentError("radius must be positive");
  Certificate cert;
  cert.center = x;
  cert.radius = alpha;
  cert.tol = tol;
  cert.points.push_back(x);
  for (int i = 0; i < k_samples; ++i) {
    RngStream cs = stream.child(static_cast<std::uint64_t>(i));
    Vec y = sample_ball(alpha, static_cast<int>(x.size()), cs);
    axpy(1.0, x, y);
    cert.points.push_back(std::move(y));
  }
  cert.gradients.reserve(cert.points.size());
  for (const Vec& p : cert.points) cert.gradients.push_back(source(p));

  MinNormResult full = min_norm_point(cert.gradients, tol);
  cert.norm = full.norm;
  cert.coefficients = full.coefficients;

  // Growing the sampled hull must not raise the achieved norm; spot-check
  // against two prefixes.
  const std::size_t total = cert.gradients.size();
  for (std::size_t cut : {std::size_t{1}, (total + 1) / 2}) {
    if (cut >= total) continue;
    std::vector<Vec> prefix(cert.gradients.begin(),
                            cert.gradients.begin() +
                                static_cast<std::ptrdiff_t>(cut));
    const double prefix_norm = min_norm_point(prefix, tol).norm;
    if (cert.norm > prefix_norm + 10.0 * tol * std::max(1.0, prefix_norm)) {
      throw InvalidArgumentError(
          "certificate monotonicity violated: hull grew but norm rose");
    }
  }
  return cert;
}

GradientSource empirical_gradient(const ComponentLoss& loss,
                                  const Dataset& dataset) {
  if (dataset.size() == 0) throw InvalidArgumentError("empty dataset");
  auto data = std::make_shared<Dataset>(dataset);
  auto loss_copy = std::make_shared<ComponentLoss>(loss);
  return [data, loss_copy](const Vec& x) {
    const std::size_t n = data->size();
    const std::size_t d = x.size();
    const std::size_t chunks = chunk_count(n);
    std::vector<Vec> partial(chunks, zeros(d));
    parallel_chunks(n, [&](std::size_t c, std::size_t b, std::size_t e) {
      Vec& acc = partial[c];
      for (std::size_t i = b; i < e; ++i)
        axpy(1.0, loss_copy->gradient(x, data->at(i)), acc);
    });
    Vec sum = zeros(d);
    for (const Vec& p : partial) axpy(1.0, p, sum);
    return scaled(sum, 1.0 / static_cast<double>(n));
  };
}

GradientSource population_surrogate_gradient(const ComponentLoss& loss,
                                             std::int64_t size,
                                             std::uint64_t seed) {
  if (size < 1) throw InvalidArgumentError("surrogate size must be >= 1");
  Dataset surrogate = make_synthetic_dataset(loss.family(), size, loss.dim(),
                                             seed, loss.lipschitz(),
                                             loss.params());
  return empirical_gradient(loss, surrogate);
}

}  // namespace dpg
