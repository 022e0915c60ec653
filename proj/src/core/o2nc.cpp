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

#include "core/o2nc.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace dpg {

void RunConfig::validate() const {
  if (!(clip > 0.0)) throw ConfigError("clip radius must be positive");
  if (!(eta > 0.0)) throw ConfigError("step size must be positive");
  if (window < 1) throw ConfigError("window must be at least 1");
  if (horizon < window)
    throw ConfigError("horizon must be at least the window length");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (static_cast<double>(window) * clip > alpha * (1.0 + 1e-12))
    throw ConfigError("window * clip must not exceed alpha");
  if (x0.empty()) throw ConfigError("x0 must be set");
}

Vec clip_step(std::span<const double> delta, std::span<const double> g,
              double eta, double clip) {
  if (!(clip > 0.0)) throw InvalidArgumentError("clip radius must be positive");
  Vec v(delta.begin(), delta.end());
  axpy(-eta, g, v);
  const double nv = norm2(v);
  if (nv > clip) {
    const double scale = clip / nv;
    for (double& t : v) t *= scale;
  }
  return v;
}

RunResult o2nc_run(GradientOracle& oracle, const RunConfig& config,
                   RngStream stream) {
  config.validate();
  const std::size_t d = config.x0.size();
  RngStream s_stream = stream.child(0);
  RngStream out_stream = stream.child(1);

  RunResult result;
  RunTrace& trace = result.trace;
  Vec x_prev = config.x0;
  Vec delta = zeros(d);  // Delta_1 = 0

  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    const double s = s_stream.uniform();
    Vec z = x_prev;
    axpy(s, delta, z);
    Vec g;
    try {
      g = oracle.call(z);
    } catch (const BudgetExhaustedError& e) {
      result.budget_exhausted = true;
      result.error = e.what();
      break;
    }
    if (g.size() != d) throw InvalidArgumentError("oracle dimension mismatch");
    Vec x_t = add(x_prev, delta);
    trace.x.push_back(x_t);
    trace.z.push_back(std::move(z));
    trace.s.push_back(s);
    trace.step_norm.push_back(norm2(delta));
    trace.g_norm.push_back(norm2(g));
    trace.cursor.push_back(oracle.cursor());
    trace.period.push_back(oracle.period_index());
    delta = clip_step(delta, g, config.eta, config.clip);
    x_prev = std::move(x_t);
  }

  const std::int64_t completed = static_cast<std::int64_t>(trace.z.size());
  const std::int64_t windows = completed / config.window;
  for (std::int64_t k = 0; k < windows; ++k) {
    Vec avg = zeros(d);
    for (std::int64_t j = 0; j < config.window; ++j)
      axpy(1.0, trace.z[static_cast<std::size_t>(k * config.window + j)], avg);
    trace.window_avgs.push_back(
        scaled(avg, 1.0 / static_cast<double>(config.window)));
  }
  if (windows > 0) {
    trace.out_index = static_cast<std::int64_t>(
        out_stream.below(static_cast<std::uint64_t>(windows)));
    result.x_out = trace.window_avgs[static_cast<std::size_t>(trace.out_index)];
  } else {
    result.x_out = config.x0;
  }
  return result;
}

Regime parse_regime(std::string_view tag) {
  if (tag == "thm31") return Regime::kThm31;
  if (tag == "thm41") return Regime::kThm41;
  if (tag == "thm61") return Regime::kThm61;
  throw ConfigError("unknown regime tag: " + std::string(tag));
}

std::string regime_tag(Regime regime) {
  switch (regime) {
    case Regime::kThm31:
      return "thm31";
    case Regime::kThm41:
      return "thm41";
    case Regime::kThm61:
      return "thm61";
  }
  return "thm31";
}

namespace {

std::int64_t round_floor1(double v) {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(v)));
}

// Exact single-pass consumption over T calls with period Sigma:
// B1 per fresh call, B2 otherwise.
std::int64_t single_pass_samples(std::int64_t T, std::int64_t sigma_len,
                                 std::int64_t b1, std::int64_t b2) {
  const std::int64_t fresh = (T + sigma_len - 1) / sigma_len;
  return b1 * fresh + b2 * (T - fresh);
}

double second_moment_bound(const OracleConfig& oracle, double L, int d,
                           std::int64_t n) {
  const double dd = static_cast<double>(d);
  const double m = static_cast<double>(oracle.m);
  const double Sigma = static_cast<double>(oracle.sigma_len);
  const double logS =
      std::log(static_cast<double>(std::max<std::int64_t>(oracle.sigma_len, 2)));
  const double b1 = static_cast<double>(oracle.b1);
  const double b2 = static_cast<double>(oracle.b2);
  const double drift = L * L * dd * oracle.move_bound * oracle.move_bound *
                       Sigma / (oracle.alpha * oracle.alpha * b2);
  switch (oracle.kind) {
    case OracleKind::kSinglePassZo:
      return L * L + L * L * dd * dd / (b1 * m) + drift +
             oracle.sigma * oracle.sigma * dd * logS +
             L * L * dd * dd * Sigma / (m * b2);
    case OracleKind::kSinglePassFo:
      return L * L + drift + oracle.sigma * oracle.sigma * dd * logS +
             L * L * Sigma / (m * b2);
    case OracleKind::kMultiPassErm: {
      const double nn = static_cast<double>(n);
      return L * L + L * L * dd * dd * Sigma / (m * nn) +
             oracle.sigma1 * oracle.sigma1 * dd +
             oracle.sigma2 * oracle.sigma2 * dd * Sigma;
    }
  }
  return L * L;
}

}  // namespace

double sample_complexity(Regime regime, const ProblemConstants& problem,
                         const GoldsteinTarget& target, double epsilon) {
  target.validate();
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(problem.lipschitz > 0.0) || !(problem.range > 0.0) || problem.d < 1)
    throw ConfigError("problem constants must be positive");
  const double L = problem.lipschitz;
  const double phi = problem.range;
  const double dd = static_cast<double>(problem.d);
  const double a = target.alpha;
  const double b = target.beta;
  switch (regime) {
    case Regime::kThm31:
    case Regime::kThm61:
      return phi * L * L * std::sqrt(dd) / (a * b * b * b) +
             phi * L * dd / (epsilon * a * b * b);
    case Regime::kThm41:
      return std::sqrt(phi) * L * std::pow(dd, 0.75) /
             (epsilon * std::sqrt(a) * std::pow(b, 1.5));
  }
  return 0.0;
}

AssignedParams assign_params(Regime regime, const ProblemConstants& problem,
                             const GoldsteinTarget& target,
                             const PrivacyBudget& budget,
                             const CalibConstants& constants) {
  target.validate();
  budget.validate();
  const double L = problem.lipschitz;
  const double phi = problem.range;
  const double dd = static_cast<double>(problem.d);
  const double alpha = target.alpha;
  const double beta = target.beta;
  const double eps = budget.epsilon;
  if (!(L > 0.0) || !(phi > 0.0) || problem.d < 1 || problem.n < 1)
    throw ConfigError("problem constants must be positive");
  if (alpha > phi / L)
    throw ConfigError("alpha must not exceed range/lipschitz");

  AssignedParams out;
  OracleConfig& oracle = out.oracle;
  RunConfig& run = out.run;
  oracle.alpha = alpha;
  oracle.delta = budget.delta;
  run.alpha = alpha;
  run.x0 = zeros(static_cast<std::size_t>(problem.d));

  if (regime == Regime::kThm41) {
    oracle.kind = OracleKind::kMultiPassErm;
    const double D = constants.c_D * alpha * alpha * beta * beta / (L * L);
    run.horizon = round_floor1(constants.c_T * phi * L * L /
                               (alpha * alpha * beta * beta * beta));
    oracle.sigma_len =
        round_floor1(constants.c_Sigma * alpha / (D * std::sqrt(dd)));
    oracle.b1 = oracle.b2 = problem.n;
    oracle.move_bound = D;
  } else {
    oracle.kind = regime == Regime::kThm31 ? OracleKind::kSinglePassZo
                                           : OracleKind::kSinglePassFo;
    // Horizon sized so the exact fresh/recursive consumption fits n.
    std::int64_t T = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(constants.c_T *
                                     static_cast<double>(problem.n) / 2.0));
    const double Td = static_cast<double>(T);
    const double D =
        constants.c_D *
        std::min({std::cbrt(phi * phi * alpha / (L * L * Td * Td)),
                  std::sqrt(phi * alpha * eps / (dd * L * Td)),
                  std::pow(phi * phi * phi * alpha * alpha * eps /
                               (std::pow(dd, 1.5) * L * L * L * Td * Td * Td),
                           0.2),
                  std::cbrt(phi * phi * alpha /
                            (L * L * Td * Td * std::sqrt(dd)))});
    oracle.sigma_len = round_floor1(
        constants.c_Sigma * std::max(std::pow(alpha / (eps * D), 2.0 / 3.0),
                                     alpha / (D * std::sqrt(dd))));
    oracle.b1 = oracle.sigma_len;
    oracle.b2 = 1;
    oracle.move_bound = D;
    while (T > 1 &&
           single_pass_samples(T, oracle.sigma_len, oracle.b1, oracle.b2) >
               problem.n) {
      --T;
    }
    run.horizon = T;
  }

  // Window from M = alpha / (4 D), then re-enforce window * clip <= alpha.
  double D = oracle.move_bound;
  run.window = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(constants.c_M * alpha / (4.0 * D))));
  if (static_cast<double>(run.window) * D > alpha)
    D = alpha / static_cast<double>(run.window);
  oracle.move_bound = D;
  run.clip = D;
  if (run.horizon < run.window) run.horizon = run.window;

  out.noise = calibrate_noise(oracle, budget, L, problem.d, run.horizon,
                              constants);
  oracle.sigma = out.noise.sigma;
  oracle.sigma1 = out.noise.sigma1;
  oracle.sigma2 = out.noise.sigma2;
  oracle.m = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(constants.c_m *
                                             out.noise.m_required)));

  out.g1 = constants.c_G1 *
           std::sqrt(second_moment_bound(oracle, L, problem.d, problem.n));
  run.eta = run.clip / (out.g1 * std::sqrt(static_cast<double>(run.window)));

  out.windows = run.horizon / run.window;
  out.samples_used =
      oracle.kind == OracleKind::kMultiPassErm
          ? 0
          : single_pass_samples(run.horizon, oracle.sigma_len, oracle.b1,
                                oracle.b2);
  out.required_n = sample_complexity(regime, problem, target, eps);
  out.n_short = static_cast<double>(problem.n) < out.required_n;
  return out;
}

}  // namespace dpg
