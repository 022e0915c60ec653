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
// Private gradient oracles. All three kinds share the same period structure:
// the call counter t starts at 1, period position p = (t-1) mod Sigma, and a
// period opens (fresh branch) at p == 0. Fresh branches compute a full
// estimate; recursive branches apply the variance-reduced update
//   g_t = g_{t-1} + mean_i [est(z_t; xi_i) - est(z_{t-1}; xi_i)],
// where per sample the first m direction draws serve z_t and the second m
// serve z_{t-1}.
//
// Single-pass kinds consume B1 fresh / B2 recursive unused samples per call
// and privatize with tree noise at index p + 1; the tree is redrawn at each
// period start (one length-Sigma mechanism per disjoint sample block).
// The multi-pass kind reuses the full dataset every call and adds fresh
// Gaussian noise (sigma1 on fresh periods, sigma2 otherwise); its recursion
// builds on the previous *noisy* output.

#ifndef DPGOLDSTEIN_CORE_ORACLES_HPP_
#define DPGOLDSTEIN_CORE_ORACLES_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "core/losses.hpp"
#include "core/rng.hpp"
#include "core/smoothing.hpp"
#include "core/tree.hpp"
#include "core/vecops.hpp"

namespace dpg {

enum class OracleKind { kSinglePassZo, kMultiPassErm, kSinglePassFo };

OracleKind parse_oracle_kind(std::string_view tag);
std::string oracle_kind_tag(OracleKind kind);

enum class OracleBranch { kFresh, kRecursive };

struct OracleConfig {
  OracleKind kind = OracleKind::kSinglePassZo;
  std::int64_t b1 = 1;         // fresh-period batch
  std::int64_t b2 = 1;         // recursive batch
  std::int64_t m = 1;          // directions per sample per point
  std::int64_t sigma_len = 1;  // period length (Sigma)
  double alpha = 0.0;          // smoothing radius
  double sigma = 0.0;          // tree noise scale (single-pass kinds)
  double sigma1 = 0.0;         // fresh-period Gaussian scale (multi-pass)
  double sigma2 = 0.0;         // recursive Gaussian scale (multi-pass)
  double move_bound = 0.0;     // D, iterate movement bound (formulas only)
  double delta = 0.0;          // failure-probability share for bounds

  void validate() const;
};

// Hidden constants of the calibration formulas, all 1 by default and
// config-overridable.
struct CalibConstants {
  double c_T = 1.0;
  double c_D = 1.0;
  double c_Sigma = 1.0;
  double c_M = 1.0;
  double c_m = 1.0;
  double c_sigma = 1.0;
  double c_G1 = 1.0;
};

// High-probability sensitivity of the pre-noise aggregate over neighboring
// minibatches (replace one sample, coupled estimator randomness):
//   zo fresh:      2 L / B1 + L d sqrt(log(8 d B1 / delta) / m)
//   zo recursive:  C (L sqrt(d) D / (alpha B2) + L d sqrt(log(8 d B2 / delta) / m))
//   fo fresh:      L / B1
//   fo recursive:  C (L sqrt(d) D / (alpha B2) + L sqrt(log(8 d B2 / delta) / m))
// The multi-pass kind uses the zo formulas with B1 = B2 = n. C is the audit
// slack constant (kRecursiveSlack) covering the smoothness constant of the
// ball average and the coupling's factor two.
inline constexpr double kRecursiveSlack = 8.0;
double sensitivity_bound(const OracleConfig& config, OracleBranch branch,
                         double lipschitz, int d, double delta);

struct NoiseCalibration {
  double sigma = 0.0;       // tree scale (single-pass kinds)
  double sigma1 = 0.0;      // multi-pass fresh
  double sigma2 = 0.0;      // multi-pass recursive
  double m_required = 0.0;  // m forcing the sensitivity event (real-valued)
  double design_sensitivity = 0.0;  // s* the noise is calibrated to
};

// Noise scales for an (epsilon, delta) budget. Single-pass kinds calibrate
// the tree with sigma = 4 s* sqrt(log(Sigma) log(1/delta)) / epsilon applied
// to the design sensitivity s* = L/B1 + L sqrt(d) D / (alpha B2); multi-pass
// uses per-call Gaussian scales sized for T-fold composition. Also returns
// the m that makes the high-probability sensitivity event hold at this
// delta. T is the total number of oracle calls.
NoiseCalibration calibrate_noise(const OracleConfig& config,
                                 const PrivacyBudget& budget, double lipschitz,
                                 int d, std::int64_t total_calls,
                                 const CalibConstants& constants = {});

// Pre-noise aggregates, shared by the oracles and the sensitivity audit.
// Per-sample randomness comes from stream.child(i) with i the position in
// `batch`, so runs over coupled batches reuse identical draws.
Vec fresh_aggregate(OracleKind kind, const ComponentLoss& loss,
                    std::span<const Sample> batch, std::span<const double> z,
                    std::int64_t m, double alpha, const RngStream& stream);
Vec recursive_increment(OracleKind kind, const ComponentLoss& loss,
                        std::span<const Sample> batch,
                        std::span<const double> z_now,
                        std::span<const double> z_prev, std::int64_t m,
                        double alpha, const RngStream& stream);

// Stateful gradient-oracle interface for the driver.
class GradientOracle {
 public:
  virtual ~GradientOracle() = default;
  virtual Vec call(std::span<const double> z) = 0;
  virtual std::int64_t cursor() const { return 0; }
  virtual std::int64_t period_index() const { return 0; }
};

class PrivateOracle : public GradientOracle {
 public:
  PrivateOracle(ComponentLoss loss, Dataset dataset, OracleConfig config,
                RngStream stream);

  Vec call(std::span<const double> z) override;

  std::int64_t calls() const { return t_; }
  std::int64_t cursor() const override {
    return static_cast<std::int64_t>(dataset_.cursor());
  }
  // 1-based position within the current period (0 before the first call).
  std::int64_t period_index() const {
    return t_ == 0 ? 0 : (t_ - 1) % config_.sigma_len + 1;
  }
  const OracleConfig& config() const { return config_; }

 private:
  bool single_pass() const {
    return config_.kind != OracleKind::kMultiPassErm;
  }

  ComponentLoss loss_;
  Dataset dataset_;
  OracleConfig config_;
  RngStream stream_;
  std::int64_t t_ = 0;
  Vec g_;       // previous aggregate (noisy for multi-pass)
  Vec z_prev_;  // previous query point
  std::optional<TreeState> tree_;
};

}  // namespace dpg

#endif  // DPGOLDSTEIN_CORE_ORACLES_HPP_
