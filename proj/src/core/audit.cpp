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

#include "core/audit.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/smoothing.hpp"

namespace dpg {
namespace {

double empirical_quantile(std::vector<double> values, double level) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const std::size_t idx = std::min(
      n - 1, static_cast<std::size_t>(std::ceil(level * static_cast<double>(n))) -
                 (level > 0.0 ? 1 : 0));
  return values[idx];
}

AuditBranchReport run_branch(const ComponentLoss& loss,
                             const OracleConfig& config, OracleBranch branch,
                             const AuditOptions& options, RngStream stream) {
  const std::int64_t batch_size =
      branch == OracleBranch::kFresh ? config.b1 : config.b2;
  const int d = loss.dim();
  AuditBranchReport report;
  report.trials = options.trials;
  report.bound =
      sensitivity_bound(config, branch, loss.lipschitz(), d, options.delta);
  report.deterministic_bound = branch == OracleBranch::kFresh &&
                               config.kind == OracleKind::kSinglePassFo;

  Vec z = zeros(static_cast<std::size_t>(d));
  if (options.z_radius != 0.0) z[0] = options.z_radius;

  std::vector<double> deviations;
  deviations.reserve(static_cast<std::size_t>(options.trials));
  for (std::int64_t trial = 0; trial < options.trials; ++trial) {
    RngStream ts = stream.child(static_cast<std::uint64_t>(trial));
    std::vector<Sample> batch;
    batch.reserve(static_cast<std::size_t>(batch_size));
    for (std::int64_t i = 0; i < batch_size; ++i) {
      RngStream ss = ts.child(static_cast<std::uint64_t>(i));
      batch.push_back(draw_sample(loss.family(), d, loss.lipschitz(),
                                  loss.params(), i, ss));
    }
    RngStream rs = ts.child(static_cast<std::uint64_t>(batch_size));
    std::vector<Sample> neighbor = batch;
    const std::size_t replaced = static_cast<std::size_t>(
        rs.below(static_cast<std::uint64_t>(batch_size)));
    neighbor[replaced] = draw_sample(loss.family(), d, loss.lipschitz(),
                                     loss.params(), batch_size, rs);

    const RngStream est = ts.child(static_cast<std::uint64_t>(batch_size) + 1);
    Vec g, gp;
    if (branch == OracleBranch::kFresh) {
      g = fresh_aggregate(config.kind, loss, batch, z, config.m, config.alpha,
                          est);
      gp = fresh_aggregate(config.kind, loss, neighbor, z, config.m,
                           config.alpha, est);
    } else {
      // Conditioned on equal previous aggregates, the deviation is the
      // difference of the recursive increments; the probe points sit at the
      // maximal separation 2 D.
      RngStream ds = ts.child(static_cast<std::uint64_t>(batch_size) + 2);
      Vec dir = sample_sphere(d, ds);
      Vec z_prev = z;
      axpy(2.0 * config.move_bound, dir, z_prev);
      g = recursive_increment(config.kind, loss, batch, z, z_prev, config.m,
                              config.alpha, est);
      gp = recursive_increment(config.kind, loss, neighbor, z, z_prev,
                               config.m, config.alpha, est);
    }
    deviations.push_back(dist(g, gp));
  }

  report.max_deviation =
      *std::max_element(deviations.begin(), deviations.end());
  report.quantile = empirical_quantile(deviations, 1.0 - options.delta / 2.0);
  for (double dev : deviations)
    if (dev > report.bound) ++report.violations;
  const double fraction = static_cast<double>(report.violations) /
                          static_cast<double>(report.trials);
  report.pass = report.deterministic_bound ? report.violations == 0
                                           : fraction <= options.delta / 2.0;
  return report;
}

}  // namespace

AuditReport sensitivity_audit(const ComponentLoss& loss,
                              const OracleConfig& config,
                              const AuditOptions& options, RngStream stream) {
  config.validate();
  if (options.trials < 1) throw ConfigError("audit needs at least one trial");
  if (!loss.can_sample())
    throw UnsupportedError("audit needs a sampleable loss family");
  AuditReport report;
  if (options.audit_fresh)
    report.fresh = run_branch(loss, config, OracleBranch::kFresh, options,
                              stream.child(0));
  if (options.audit_recursive)
    report.recursive = run_branch(loss, config, OracleBranch::kRecursive,
                                  options, stream.child(1));
  return report;
}

double certificate_gap(const GradientSource& first,
                       const GradientSource& second, const Vec& x,
                       double alpha, int k_samples, RngStream stream,
                       double tol) {
  const Certificate a =
      goldstein_certificate(first, x, alpha, k_samples, stream, tol);
  const Certificate b =
      goldstein_certificate(second, x, alpha, k_samples, stream, tol);
  return std::abs(a.norm - b.norm);
}

GenGapReport generalization_gap(const ComponentLoss& loss,
                                const GenGapOptions& options,
                                RngStream stream) {
  if (options.n_list.empty()) throw ConfigError("n_list must be nonempty");
  for (std::int64_t n : options.n_list)
    if (n < 8) throw ConfigError("every n must be at least 8");
  if (options.trials < 1) throw ConfigError("trials must be at least 1");
  if (!loss.can_sample())
    throw UnsupportedError("gap experiment needs a sampleable loss family");

  const GradientSource population = population_surrogate_gradient(
      loss, options.surrogate_size, stream.child(0).next_u64());

  GenGapReport report;
  RngStream trial_lane = stream.child(1);
  for (std::size_t ni = 0; ni < options.n_list.size(); ++ni) {
    const std::int64_t n = options.n_list[ni];
    GenGapRow row;
    row.n = n;
    for (std::int64_t trial = 0; trial < options.trials; ++trial) {
      RngStream ts = trial_lane.child(ni * 4096 + static_cast<std::uint64_t>(trial));
      const Dataset dataset =
          make_synthetic_dataset(loss.family(), n, loss.dim(),
                                 ts.child(0).next_u64(), loss.lipschitz(),
                                 loss.params());
      RngStream ps = ts.child(1);
      Vec x_ref = sample_sphere(loss.dim(), ps);
      for (double& v : x_ref) v *= options.ref_radius;
      const GradientSource empirical = empirical_gradient(loss, dataset);
      row.gaps.push_back(certificate_gap(empirical, population, x_ref,
                                         options.alpha, options.cert_samples,
                                         ts.child(2), options.tol));
    }
    std::vector<double> sorted = row.gaps;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    row.median_gap = sorted.size() % 2 == 1
                         ? sorted[mid]
                         : 0.5 * (sorted[mid - 1] + sorted[mid]);
    report.rows.push_back(std::move(row));
  }

  // Least-squares slope of log(median) on log(n).
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (const GenGapRow& row : report.rows) {
    if (row.median_gap <= 0.0) continue;
    const double lx = std::log(static_cast<double>(row.n));
    const double ly = std::log(row.median_gap);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count >= 2) {
    const double c = static_cast<double>(count);
    report.slope = (c * sxy - sx * sy) / (c * sxx - sx * sx);
  }
  return report;
}

ConcentrationReport norm_subgaussian_check(const ConcentrationOptions& options,
                                           RngStream stream) {
  if (options.k < 1) throw ConfigError("k must be at least 1");
  if (!(options.gamma > 0.0 && options.gamma < 1.0))
    throw ConfigError("gamma must lie in (0, 1)");
  if (options.trials < 1) throw ConfigError("trials must be at least 1");
  Vec zeta = options.zeta;
  if (zeta.empty()) throw ConfigError("zeta scales must be provided");
  if (zeta.size() == 1)
    zeta.assign(static_cast<std::size_t>(options.k), zeta[0]);
  if (zeta.size() != static_cast<std::size_t>(options.k))
    throw ConfigError("zeta must have one entry or k entries");
  for (double z : zeta)
    if (!(z >= 0.0)) throw ConfigError("zeta scales must be >= 0");

  double sum_sq = 0.0;
  for (double z : zeta) sum_sq += z * z;
  ConcentrationReport report;
  report.trials = options.trials;
  report.threshold =
      options.c *
      std::sqrt(std::log(static_cast<double>(options.d) / options.gamma) *
                sum_sq);

  for (std::int64_t trial = 0; trial < options.trials; ++trial) {
    RngStream ts = stream.child(static_cast<std::uint64_t>(trial));
    Vec sum = zeros(static_cast<std::size_t>(options.d));
    for (std::int64_t i = 0; i < options.k; ++i) {
      const double scale = zeta[static_cast<std::size_t>(i)];
      if (scale == 0.0) continue;
      RngStream is = ts.child(static_cast<std::uint64_t>(i));
      const Vec x = sample_sphere(options.d, is);
      axpy(scale, x, sum);
    }
    if (norm2(sum) > report.threshold) ++report.exceed_count;
  }
  report.exceed_fraction = static_cast<double>(report.exceed_count) /
                           static_cast<double>(report.trials);
  report.pass = report.exceed_fraction <= options.gamma;
  return report;
}

LLCheckReport ll_stationarity_check(const ScalarFn& h,
                                    const GradientSource& h_grad,
                                    double lambda, double lipschitz,
                                    const GridSpec& grid,
                                    const LLCheckOptions& options,
                                    RngStream stream) {
  if (!(options.beta > 0.0)) throw ConfigError("beta must be positive");
  const LasryLionsGrid surface(h, lambda, lipschitz, grid);
  const double margin =
      3.0 * lambda * lipschitz + 2.0 * grid.max_spacing();

  // Scan interior grid points for the smallest finite-difference gradient.
  LLCheckReport report;
  double best = std::numeric_limits<double>::infinity();
  const int G = grid.points_per_axis;
  Vec x(static_cast<std::size_t>(grid.dim()));
  auto consider = [&](const Vec& p) {
    for (int a = 0; a < grid.dim(); ++a) {
      const std::size_t ai = static_cast<std::size_t>(a);
      if (p[ai] < grid.lo[ai] + margin || p[ai] > grid.hi[ai] - margin)
        return;
    }
    const double g = norm2(surface.fd_gradient(p));
    if (g < best) {
      best = g;
      report.point = p;
    }
  };
  if (grid.dim() == 1) {
    for (int i = 0; i < G; ++i) {
      x[0] = grid.lo[0] + static_cast<double>(i) * grid.spacing(0);
      consider(x);
    }
  } else {
    for (int i = 0; i < G; ++i) {
      x[0] = grid.lo[0] + static_cast<double>(i) * grid.spacing(0);
      for (int j = 0; j < G; ++j) {
        x[1] = grid.lo[1] + static_cast<double>(j) * grid.spacing(1);
        consider(x);
      }
    }
  }
  if (!(best <= options.beta)) {
    throw InvalidArgumentError(
        "no grid point is beta-stationary for the smoothed surface");
  }
  report.ll_grad_norm = best;
  report.radius = 3.0 * lambda * lipschitz;
  const Certificate cert =
      goldstein_certificate(h_grad, report.point, report.radius,
                            options.cert_samples, stream, options.tol);
  report.cert_norm = cert.norm;
  report.cert_tol = cert.tol;
  return report;
}

}  // namespace dpg
