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

#include "core/oracles.hpp"

#include <cmath>
#include <utility>

#include "core/errors.hpp"

namespace dpg {
namespace {

// Oracle root-stream layout: child 0 feeds mechanism noise (per-period trees
// or per-call Gaussians), child t feeds the estimators of call t >= 1.
constexpr std::uint64_t kNoiseLane = 0;

double safe_log_sigma(std::int64_t sigma_len) {
  return std::log(static_cast<double>(std::max<std::int64_t>(sigma_len, 2)));
}

}  // namespace

OracleKind parse_oracle_kind(std::string_view tag) {
  if (tag == "single-pass-zo") return OracleKind::kSinglePassZo;
  if (tag == "multi-pass-erm") return OracleKind::kMultiPassErm;
  if (tag == "single-pass-fo") return OracleKind::kSinglePassFo;
  throw ConfigError("unknown oracle kind: " + std::string(tag));
}

std::string oracle_kind_tag(OracleKind kind) {
  switch (kind) {
    case OracleKind::kSinglePassZo:
      return "single-pass-zo";
    case OracleKind::kMultiPassErm:
      return "multi-pass-erm";
    case OracleKind::kSinglePassFo:
      return "single-pass-fo";
  }
  return "single-pass-zo";
}

void OracleConfig::validate() const {
  if (b2 < 1 || b1 < b2) throw ConfigError("need B1 >= B2 >= 1");
  if (sigma_len < 1) throw ConfigError("period length must be at least 1");
  if (m < 1) throw ConfigError("estimator batch m must be at least 1");
  if (!(alpha > 0.0)) throw ConfigError("smoothing radius must be positive");
  if (!(sigma >= 0.0) || !(sigma1 >= 0.0) || !(sigma2 >= 0.0))
    throw ConfigError("noise scales must be >= 0");
}

double sensitivity_bound(const OracleConfig& config, OracleBranch branch,
                         double lipschitz, int d, double delta) {
  config.validate();
  if (!(delta > 0.0 && delta < 1.0))
    throw ConfigError("delta must lie in (0, 1)");
  const double L = lipschitz;
  const double dd = static_cast<double>(d);
  const double b1 = static_cast<double>(config.b1);
  const double b2 = static_cast<double>(config.b2);
  const double m = static_cast<double>(config.m);
  const bool first_order = config.kind == OracleKind::kSinglePassFo;
  if (branch == OracleBranch::kFresh) {
    if (first_order) return L / b1;
    return 2.0 * L / b1 + L * dd * std::sqrt(std::log(8.0 * dd * b1 / delta) / m);
  }
  const double drift = L * std::sqrt(dd) * config.move_bound /
                       (config.alpha * b2);
  const double conc_log = std::log(8.0 * dd * b2 / delta);
  const double conc = first_order ? L * std::sqrt(conc_log / m)
                                  : L * dd * std::sqrt(conc_log / m);
  return kRecursiveSlack * (drift + conc);
}

NoiseCalibration calibrate_noise(const OracleConfig& config,
                                 const PrivacyBudget& budget, double lipschitz,
                                 int d, std::int64_t total_calls,
                                 const CalibConstants& constants) {
  config.validate();
  budget.validate();
  const double L = lipschitz;
  const double dd = static_cast<double>(d);
  const double b1 = static_cast<double>(config.b1);
  const double b2 = static_cast<double>(config.b2);
  const double eps = budget.epsilon;
  const double log_inv_delta = std::log(1.0 / budget.delta);
  const double log_db2_delta = std::log(dd * b2 / budget.delta);
  const double alpha = config.alpha;
  const double D = config.move_bound;

  NoiseCalibration out;
  switch (config.kind) {
    case OracleKind::kSinglePassZo: {
      out.design_sensitivity =
          L / b1 + L * std::sqrt(dd) * D / (alpha * b2);
      out.sigma = constants.c_sigma * 4.0 * out.design_sensitivity *
                  std::sqrt(safe_log_sigma(config.sigma_len) * log_inv_delta) /
                  eps;
      out.m_required = log_db2_delta *
                       (dd * dd * b1 * b1 +
                        dd * alpha * alpha * b2 * b2 / (D * D));
      break;
    }
    case OracleKind::kSinglePassFo: {
      out.design_sensitivity =
          L / b1 + L * std::sqrt(dd) * D / (alpha * b2);
      out.sigma = constants.c_sigma * 4.0 * out.design_sensitivity *
                  std::sqrt(safe_log_sigma(config.sigma_len) * log_inv_delta) /
                  eps;
      out.m_required = log_db2_delta * b2 * b2 * alpha * alpha / (D * D * dd);
      break;
    }
    case OracleKind::kMultiPassErm: {
      // b1 == b2 == n for the multi-pass kind.
      const double n = b1;
      const double T = static_cast<double>(total_calls);
      const double Sigma = static_cast<double>(config.sigma_len);
      out.sigma1 = constants.c_sigma * L *
                   std::sqrt(T * log_inv_delta / Sigma) / (n * eps);
      out.sigma2 = constants.c_sigma * L * D *
                   std::sqrt(T * dd * log_inv_delta) / (alpha * n * eps);
      const double s1 = std::max(out.sigma1, 1e-300);
      const double s2 = std::max(out.sigma2, 1e-300);
      out.m_required = L * L * dd * Sigma / (n * s1 * s1) +
                       L * L * dd / (n * s2 * s2);
      out.design_sensitivity =
          L / n + L * std::sqrt(dd) * D / (alpha * n);
      break;
    }
  }
  return out;
}

Vec fresh_aggregate(OracleKind kind, const ComponentLoss& loss,
                    std::span<const Sample> batch, std::span<const double> z,
                    std::int64_t m, double alpha, const RngStream& stream) {
  const std::size_t d = z.size();
  Vec acc = zeros(d);
  if (kind == OracleKind::kSinglePassFo) {
    // One ball perturbation per sample.
    Vec shifted(d);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      RngStream ss = stream.child(i);
      const Vec y = sample_ball(alpha, loss.dim(), ss);
      for (std::size_t j = 0; j < d; ++j) shifted[j] = z[j] + y[j];
      axpy(1.0, loss.gradient(shifted, batch[i]), acc);
    }
  } else {
    const SmoothingParams params{alpha, m};
    for (std::size_t i = 0; i < batch.size(); ++i) {
      axpy(1.0, zo_estimate(loss, z, batch[i], params, stream.child(i)), acc);
    }
  }
  return scaled(acc, 1.0 / static_cast<double>(batch.size()));
}

Vec recursive_increment(OracleKind kind, const ComponentLoss& loss,
                        std::span<const Sample> batch,
                        std::span<const double> z_now,
                        std::span<const double> z_prev, std::int64_t m,
                        double alpha, const RngStream& stream) {
  const std::size_t d = z_now.size();
  const bool first_order = kind == OracleKind::kSinglePassFo;
  Vec acc = zeros(d);
  Vec point(d);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    RngStream ss = stream.child(i);
    // Directions 0..m-1 serve z_now, m..2m-1 serve z_prev.
    for (std::int64_t j = 0; j < 2 * m; ++j) {
      RngStream ds = ss.child(static_cast<std::uint64_t>(j));
      const bool now = j < m;
      std::span<const double> base = now ? z_now : z_prev;
      const double sign = now ? 1.0 : -1.0;
      if (first_order) {
        const Vec u = sample_ball(alpha, loss.dim(), ds);
        for (std::size_t q = 0; q < d; ++q) point[q] = base[q] + u[q];
        axpy(sign, loss.gradient(point, batch[i]), acc);
      } else {
        const Vec y = sample_sphere(loss.dim(), ds);
        double plus, minus;
        for (std::size_t q = 0; q < d; ++q) point[q] = base[q] + alpha * y[q];
        plus = loss.value(point, batch[i]);
        for (std::size_t q = 0; q < d; ++q) point[q] = base[q] - alpha * y[q];
        minus = loss.value(point, batch[i]);
        const double w =
            static_cast<double>(loss.dim()) / (2.0 * alpha) * (plus - minus);
        axpy(sign * w, y, acc);
      }
    }
  }
  return scaled(acc, 1.0 / (static_cast<double>(m) *
                            static_cast<double>(batch.size())));
}

PrivateOracle::PrivateOracle(ComponentLoss loss, Dataset dataset,
                             OracleConfig config, RngStream stream)
    : loss_(std::move(loss)),
      dataset_(std::move(dataset)),
      config_(config),
      stream_(stream) {
  config_.validate();
  if (config_.kind == OracleKind::kSinglePassZo && !loss_.has_value())
    throw UnsupportedError("zero-order oracle needs value queries");
  if (config_.kind == OracleKind::kSinglePassFo && !loss_.has_gradient())
    throw UnsupportedError("first-order oracle needs gradient queries");
  if (config_.kind == OracleKind::kMultiPassErm) {
    if (dataset_.size() == 0) throw ConfigError("empty dataset");
    config_.b1 = config_.b2 = static_cast<std::int64_t>(dataset_.size());
  }
}

Vec PrivateOracle::call(std::span<const double> z) {
  if (static_cast<int>(z.size()) != loss_.dim())
    throw InvalidArgumentError("query dimension mismatch");
  const std::int64_t t = t_ + 1;
  const std::int64_t p = (t - 1) % config_.sigma_len;  // period position
  const bool fresh = p == 0;
  const RngStream call_stream = stream_.child(static_cast<std::uint64_t>(t));
  const RngStream noise_lane = stream_.child(kNoiseLane);

  Vec out;
  if (config_.kind == OracleKind::kMultiPassErm) {
    const std::span<const Sample> batch = dataset_.all();
    Vec g;
    if (fresh) {
      g = fresh_aggregate(config_.kind, loss_, batch, z, config_.m,
                          config_.alpha, call_stream);
    } else {
      g = g_;
      axpy(1.0,
           recursive_increment(config_.kind, loss_, batch, z, z_prev_,
                               config_.m, config_.alpha, call_stream),
           g);
    }
    const double scale = fresh ? config_.sigma1 : config_.sigma2;
    RngStream ns = noise_lane.child(static_cast<std::uint64_t>(t));
    out = g;
    for (double& v : out) v += scale * ns.normal();
    g_ = out;  // the recursion builds on the noisy output
  } else {
    if (fresh) {
      // One fresh tree per period: periods touch disjoint samples, so each
      // gets its own length-Sigma mechanism.
      RngStream ts =
          noise_lane.child(static_cast<std::uint64_t>(t / config_.sigma_len));
      tree_.emplace(config_.sigma, config_.sigma_len, loss_.dim(),
                    std::move(ts));
      const std::span<const Sample> batch =
          dataset_.take(static_cast<std::size_t>(config_.b1));
      g_ = fresh_aggregate(config_.kind, loss_, batch, z, config_.m,
                           config_.alpha, call_stream);
    } else {
      const std::span<const Sample> batch =
          dataset_.take(static_cast<std::size_t>(config_.b2));
      axpy(1.0,
           recursive_increment(config_.kind, loss_, batch, z, z_prev_,
                               config_.m, config_.alpha, call_stream),
           g_);
    }
    out = add(g_, tree_->noise(p + 1));
  }

  t_ = t;
  z_prev_.assign(z.begin(), z.end());
  return out;
}

}  // namespace dpg
