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
// Empirical auditing: oracle sensitivity over coupled neighboring
// minibatches, the empirical-to-population certificate gap and its rate in
// n, a Hoeffding-style tail check for norm-bounded vector sums, and the
// Lasry-Lions stationarity transfer check.

#ifndef DPGOLDSTEIN_CORE_AUDIT_HPP_
#define DPGOLDSTEIN_CORE_AUDIT_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "core/certify.hpp"
#include "core/llsmooth.hpp"
#include "core/losses.hpp"
#include "core/oracles.hpp"
#include "core/rng.hpp"

namespace dpg {

struct AuditOptions {
  std::int64_t trials = 1000;
  double delta = 0.1;      // failure share: pass needs violations <= delta/2
  double z_radius = 0.0;   // evaluation point z = z_radius * e_1
  bool audit_fresh = true;
  bool audit_recursive = true;
};

struct AuditBranchReport {
  double max_deviation = 0.0;
  double quantile = 0.0;  // empirical (1 - delta/2) quantile
  double bound = 0.0;
  std::int64_t violations = 0;
  std::int64_t trials = 0;
  bool deterministic_bound = false;  // fo fresh: zero violations allowed
  bool pass = false;
};

struct AuditReport {
  std::optional<AuditBranchReport> fresh;
  std::optional<AuditBranchReport> recursive;
};

// Per trial: draw a minibatch and a one-sample replacement from the loss
// family, run the pre-noise aggregate on both with identical estimator
// randomness, and record |g - g'|. The fresh first-order bound is
// deterministic (no violations allowed); the others are high-probability
// bounds at level delta/2.
AuditReport sensitivity_audit(const ComponentLoss& loss,
                              const OracleConfig& config,
                              const AuditOptions& options, RngStream stream);

// Certified-norm gap between two gradient fields at one point, using the
// same sampled ball points for both certificates.
double certificate_gap(const GradientSource& first,
                       const GradientSource& second, const Vec& x,
                       double alpha, int k_samples, RngStream stream,
                       double tol = 1e-9);

struct GenGapOptions {
  std::vector<std::int64_t> n_list;
  std::int64_t trials = 20;
  double alpha = 0.25;
  int cert_samples = 32;
  std::int64_t surrogate_size = 1000000;
  double ref_radius = 2.5;  // reference points drawn at this distance
  double tol = 1e-9;
};

struct GenGapRow {
  std::int64_t n = 0;
  double median_gap = 0.0;
  std::vector<double> gaps;
};

struct GenGapReport {
  std::vector<GenGapRow> rows;
  double slope = 0.0;  // least-squares slope of log(median gap) vs log(n)
};

// For each n: fresh datasets, certificates of the empirical objective vs a
// fixed fresh population surrogate at seeded reference points; reports the
// per-n median gap and the fitted log-log slope.
GenGapReport generalization_gap(const ComponentLoss& loss,
                                const GenGapOptions& options,
                                RngStream stream);

struct ConcentrationOptions {
  int d = 10;
  std::int64_t k = 100;
  Vec zeta;  // per-step norm bounds; broadcast if a single entry
  std::int64_t trials = 10000;
  double c = 3.0;      // bound constant
  double gamma = 0.01;
};

struct ConcentrationReport {
  double threshold = 0.0;  // c * sqrt(log(d/gamma) * sum zeta_i^2)
  std::int64_t exceed_count = 0;
  double exceed_fraction = 0.0;
  std::int64_t trials = 0;
  bool pass = false;  // exceed_fraction <= gamma
};

// Sums k independent zero-mean vectors with |X_i| = zeta_i (uniform sphere
// scaled) and measures how often the sum norm exceeds the bound.
ConcentrationReport norm_subgaussian_check(const ConcentrationOptions& options,
                                           RngStream stream);

struct LLCheckOptions {
  double beta = 0.0;     // stationarity threshold for the smoothed surface
  int cert_samples = 64;
  double tol = 1e-9;
};

struct LLCheckReport {
  Vec point;                  // located grid point
  double ll_grad_norm = 0.0;  // finite-difference gradient norm there
  double radius = 0.0;        // 3 * lambda * L
  double cert_norm = 0.0;     // certified norm of h at the point
  double cert_tol = 0.0;
};

// Locates a grid point where the finite-difference gradient of the
// Lasry-Lions surface has norm <= beta, then certifies h there at radius
// 3 * lambda * L. Throws if no such grid point exists.
LLCheckReport ll_stationarity_check(const ScalarFn& h,
                                    const GradientSource& h_grad,
                                    double lambda, double lipschitz,
                                    const GridSpec& grid,
                                    const LLCheckOptions& options,
                                    RngStream stream);

}  // namespace dpg

#endif  // DPGOLDSTEIN_CORE_AUDIT_HPP_
