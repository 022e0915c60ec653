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
// Online-to-non-convex driver: clipped online gradient steps on increments,
// randomized probe points, window-averaged outputs. The driver is strictly
// sequential; independent seeded runs may execute concurrently.

#ifndef DPGOLDSTEIN_CORE_O2NC_HPP_
#define DPGOLDSTEIN_CORE_O2NC_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/losses.hpp"
#include "core/oracles.hpp"
#include "core/rng.hpp"
#include "core/vecops.hpp"

namespace dpg {

struct RunConfig {
  double clip = 0.0;        // D, per-step movement bound
  double eta = 0.0;         // step size
  std::int64_t window = 1;  // M, averaging length
  std::int64_t horizon = 1; // T, oracle-call budget
  double alpha = 0.0;       // target radius; window * clip <= alpha
  Vec x0;

  void validate() const;
};

struct RunTrace {
  std::vector<Vec> x;            // x_t, t = 1..T
  std::vector<Vec> z;            // probe points z_t
  std::vector<double> s;         // interpolation draws s_t
  std::vector<double> step_norm; // |x_t - x_{t-1}|
  std::vector<double> g_norm;    // |g~_t|
  std::vector<std::int64_t> cursor;
  std::vector<std::int64_t> period;
  std::vector<Vec> window_avgs;  // x-bar_k, k = 1..K
  std::int64_t out_index = -1;   // chosen window (0-based), -1 if none
};

struct RunResult {
  Vec x_out;
  RunTrace trace;
  bool budget_exhausted = false;
  std::string error;

  bool ok() const { return !budget_exhausted; }
};

// (delta - eta g) rescaled onto the ball of radius clip; exact when already
// inside.
Vec clip_step(std::span<const double> delta, std::span<const double> g,
              double eta, double clip);

// Runs the driver for exactly config.horizon oracle calls (fewer only on
// budget exhaustion, in which case the partial trace is returned with
// budget_exhausted set).
RunResult o2nc_run(GradientOracle& oracle, const RunConfig& config,
                   RngStream stream);

enum class Regime { kThm31, kThm41, kThm61 };

Regime parse_regime(std::string_view tag);
std::string regime_tag(Regime regime);

struct ProblemConstants {
  double lipschitz = 1.0;
  double range = 1.0;  // Phi, objective range bound from x0
  int d = 1;
  std::int64_t n = 1;  // available samples
};

struct AssignedParams {
  RunConfig run;
  OracleConfig oracle;
  NoiseCalibration noise;
  double g1 = 0.0;             // second-moment bound used for eta
  std::int64_t windows = 0;    // K = floor(T / M)
  std::int64_t samples_used = 0;  // exact single-pass consumption
  double required_n = 0.0;     // sample-complexity evaluation at the target
  bool n_short = false;
};

// Evaluates the regime's parameter formulas (explicit constants, rounding
// to integers with floor 1; window * clip <= alpha re-enforced by shrinking
// the clip). Single-pass regimes size the horizon to the sample budget.
AssignedParams assign_params(Regime regime, const ProblemConstants& problem,
                             const GoldsteinTarget& target,
                             const PrivacyBudget& budget,
                             const CalibConstants& constants = {});

// Required dataset size for the regime at the given target, with all
// constants and log factors set to 1. Monotone decreasing in alpha, beta,
// epsilon.
double sample_complexity(Regime regime, const ProblemConstants& problem,
                         const GoldsteinTarget& target, double epsilon);

}  // namespace dpg

#endif  // DPGOLDSTEIN_CORE_O2NC_HPP_
