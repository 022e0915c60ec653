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

#include "core/losses.hpp"

#include <cmath>
#include <utility>

#include "core/errors.hpp"
#include "core/smoothing.hpp"

namespace dpg {

void PrivacyBudget::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw ConfigError("delta must lie in (0, 1)");
}

void GoldsteinTarget::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
}

LossFamily parse_family(std::string_view tag) {
  if (tag == "euclidean-distance") return LossFamily::kEuclideanDistance;
  if (tag == "truncated-distance") return LossFamily::kTruncatedDistance;
  if (tag == "max-of-linears") return LossFamily::kMaxOfLinears;
  throw ConfigError("unknown loss family tag: " + std::string(tag));
}

std::string family_tag(LossFamily family) {
  switch (family) {
    case LossFamily::kEuclideanDistance:
      return "euclidean-distance";
    case LossFamily::kTruncatedDistance:
      return "truncated-distance";
    case LossFamily::kMaxOfLinears:
      return "max-of-linears";
    case LossFamily::kLinear:
      return "linear";
    case LossFamily::kCustom:
      return "custom";
  }
  return "custom";
}

Dataset::Dataset(std::vector<Sample> samples)
    : samples_(std::make_shared<const std::vector<Sample>>(
          std::move(samples))) {}

std::span<const Sample> Dataset::take(std::size_t count) {
  if (count > remaining()) {
    throw BudgetExhaustedError(static_cast<std::int64_t>(count),
                               static_cast<std::int64_t>(remaining()));
  }
  std::span<const Sample> out(samples_->data() + cursor_, count);
  cursor_ += count;
  return out;
}

Sample draw_sample(LossFamily family, int d, double lipschitz,
                   const FamilyParams& params, std::int64_t id,
                   RngStream& stream) {
  Sample s;
  s.id = id;
  switch (family) {
    case LossFamily::kEuclideanDistance:
    case LossFamily::kTruncatedDistance: {
      s.payload.resize(static_cast<std::size_t>(d));
      for (double& v : s.payload) v = stream.normal();
      break;
    }
    case LossFamily::kMaxOfLinears: {
      const int k = params.pieces;
      s.payload.reserve(static_cast<std::size_t>(k) * (d + 1));
      for (int i = 0; i < k; ++i) {
        Vec dir = sample_sphere(d, stream);
        for (double v : dir) s.payload.push_back(lipschitz * v);
        s.payload.push_back(stream.normal());
      }
      break;
    }
    default:
      throw ConfigError("family does not support sampling: " +
                        family_tag(family));
  }
  return s;
}

Dataset make_synthetic_dataset(LossFamily family, std::int64_t n, int d,
                               std::uint64_t seed, double lipschitz,
                               const FamilyParams& params) {
  if (n < 1) throw ConfigError("dataset size must be at least 1");
  if (d < 1) throw ConfigError("dimension must be at least 1");
  if (family == LossFamily::kMaxOfLinears && params.pieces < 1)
    throw ConfigError("max-of-linears needs at least one piece");
  RngStream root(seed);
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    RngStream s = root.child(static_cast<std::uint64_t>(i));
    samples.push_back(draw_sample(family, d, lipschitz, params, i, s));
  }
  return Dataset(std::move(samples));
}

Dataset make_synthetic_dataset(std::string_view tag, std::int64_t n, int d,
                               std::uint64_t seed, double lipschitz,
                               const FamilyParams& params) {
  return make_synthetic_dataset(parse_family(tag), n, d, seed, lipschitz,
                                params);
}

namespace {

void check_dim(int expected, std::size_t got) {
  if (static_cast<std::size_t>(expected) != got) {
    throw InvalidArgumentError("dimension mismatch: expected " +
                               std::to_string(expected) + ", got " +
                               std::to_string(got));
  }
}

double distance_to_payload(std::span<const double> x, const Sample& xi) {
  return dist(x, xi.payload);
}

Vec distance_gradient(std::span<const double> x, const Sample& xi, double L) {
  const double r = distance_to_payload(x, xi);
  Vec g = zeros(x.size());
  if (r == 0.0) return g;  // kink: zero vector
  for (std::size_t i = 0; i < x.size(); ++i)
    g[i] = L * (x[i] - xi.payload[i]) / r;
  return g;
}

// Highest value wins; strict comparison keeps the lowest index on ties.
int argmax_piece(std::span<const double> x, const Sample& xi, int d, int k) {
  int best = 0;
  double best_val = 0.0;
  for (int i = 0; i < k; ++i) {
    const std::size_t off = static_cast<std::size_t>(i) * (d + 1);
    double v = xi.payload[off + static_cast<std::size_t>(d)];
    for (int j = 0; j < d; ++j)
      v += xi.payload[off + static_cast<std::size_t>(j)] * x[j];
    if (i == 0 || v > best_val) {
      best = i;
      best_val = v;
    }
  }
  return best;
}

}  // namespace

ComponentLoss ComponentLoss::euclidean_distance(int d, double lipschitz) {
  if (d < 1) throw ConfigError("dimension must be at least 1");
  if (!(lipschitz >= 0.0)) throw ConfigError("Lipschitz constant must be >= 0");
  ComponentLoss loss;
  loss.family_ = LossFamily::kEuclideanDistance;
  loss.d_ = d;
  loss.lipschitz_ = lipschitz;
  const double L = lipschitz;
  loss.value_ = [L](std::span<const double> x, const Sample& xi) {
    return L * distance_to_payload(x, xi);
  };
  loss.grad_ = [L](std::span<const double> x, const Sample& xi) {
    return distance_gradient(x, xi, L);
  };
  return loss;
}

ComponentLoss ComponentLoss::truncated_distance(int d, double lipschitz,
                                                double c) {
  if (!(c > 0.0)) throw ConfigError("truncation constant must be positive");
  ComponentLoss loss = euclidean_distance(d, lipschitz);
  loss.family_ = LossFamily::kTruncatedDistance;
  loss.params_.trunc_c = c;
  const double L = lipschitz;
  loss.value_ = [L, c](std::span<const double> x, const Sample& xi) {
    return L * std::min(distance_to_payload(x, xi), c);
  };
  // min(dist, c): piece 0 is the distance, piece 1 the constant; ties at
  // dist == c resolve to piece 0.
  loss.grad_ = [L, c](std::span<const double> x, const Sample& xi) {
    const double r = distance_to_payload(x, xi);
    if (r > c) return zeros(x.size());
    return distance_gradient(x, xi, L);
  };
  return loss;
}

ComponentLoss ComponentLoss::max_of_linears(int d, double lipschitz,
                                            int pieces) {
  if (d < 1) throw ConfigError("dimension must be at least 1");
  if (pieces < 1) throw ConfigError("max-of-linears needs at least one piece");
  ComponentLoss loss;
  loss.family_ = LossFamily::kMaxOfLinears;
  loss.d_ = d;
  loss.lipschitz_ = lipschitz;
  loss.params_.pieces = pieces;
  const int k = pieces;
  loss.value_ = [d, k](std::span<const double> x, const Sample& xi) {
    const int best = argmax_piece(x, xi, d, k);
    const std::size_t off = static_cast<std::size_t>(best) * (d + 1);
    double v = xi.payload[off + static_cast<std::size_t>(d)];
    for (int j = 0; j < d; ++j)
      v += xi.payload[off + static_cast<std::size_t>(j)] * x[j];
    return v;
  };
  loss.grad_ = [d, k](std::span<const double> x, const Sample& xi) {
    const int best = argmax_piece(x, xi, d, k);
    const std::size_t off = static_cast<std::size_t>(best) * (d + 1);
    Vec g(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
      g[static_cast<std::size_t>(j)] = xi.payload[off + j];
    return g;
  };
  return loss;
}

ComponentLoss ComponentLoss::linear(Vec coefficients) {
  if (coefficients.empty()) throw ConfigError("empty coefficient vector");
  ComponentLoss loss;
  loss.family_ = LossFamily::kLinear;
  loss.d_ = static_cast<int>(coefficients.size());
  loss.lipschitz_ = norm2(coefficients);
  loss.linear_c_ = std::move(coefficients);
  const Vec& c = loss.linear_c_;
  loss.value_ = [&c = loss.linear_c_](std::span<const double> x,
                                      const Sample&) { return dot(c, x); };
  loss.grad_ = [&c = loss.linear_c_](std::span<const double>, const Sample&) {
    return c;
  };
  (void)c;
  return loss;
}

ComponentLoss ComponentLoss::custom(int d, double lipschitz,
                                    double range_bound, ValueFn value,
                                    GradFn grad) {
  ComponentLoss loss;
  loss.family_ = LossFamily::kCustom;
  loss.d_ = d;
  loss.lipschitz_ = lipschitz;
  loss.range_bound_const_ = range_bound;
  loss.value_ = std::move(value);
  loss.grad_ = std::move(grad);
  return loss;
}

ComponentLoss ComponentLoss::from_tag(std::string_view tag, int d,
                                      double lipschitz,
                                      const FamilyParams& params) {
  switch (parse_family(tag)) {
    case LossFamily::kEuclideanDistance:
      return euclidean_distance(d, lipschitz);
    case LossFamily::kTruncatedDistance:
      return truncated_distance(d, lipschitz, params.trunc_c);
    case LossFamily::kMaxOfLinears:
      return max_of_linears(d, lipschitz, params.pieces);
    default:
      throw ConfigError("unknown loss family tag: " + std::string(tag));
  }
}

double ComponentLoss::value(std::span<const double> x,
                            const Sample& xi) const {
  if (!has_value()) throw UnsupportedError("loss has no value capability");
  check_dim(d_, x.size());
  return value_(x, xi);
}

Vec ComponentLoss::gradient(std::span<const double> x,
                            const Sample& xi) const {
  if (!has_gradient())
    throw UnsupportedError("loss has no gradient capability");
  check_dim(d_, x.size());
  return grad_(x, xi);
}

double ComponentLoss::range_bound(std::span<const double> x0) const {
  const double sqrt_d = std::sqrt(static_cast<double>(d_));
  const double r0 = norm2(x0);
  switch (family_) {
    case LossFamily::kEuclideanDistance:
      // F(x0) <= L (E|xi| + |x0|) <= L (sqrt(d) + |x0|), inf F >= 0.
      return lipschitz_ * (sqrt_d + r0);
    case LossFamily::kTruncatedDistance:
      return lipschitz_ * std::min(sqrt_d + r0, params_.trunc_c);
    case LossFamily::kMaxOfLinears:
      // Heuristic: F(x0) <= L |x0| + E max_i b_i, and the min is crudely
      // bounded by the same scale below zero.
      return lipschitz_ * (sqrt_d + r0) +
             std::sqrt(2.0 * std::log(std::max(2, params_.pieces))) + 1.0;
    default:
      return range_bound_const_;
  }
}

ComponentLoss ComponentLoss::value_only() const {
  ComponentLoss loss = *this;
  loss.grad_ = nullptr;
  return loss;
}

PopulationGradient population_gradient(const ComponentLoss& loss,
                                       std::span<const double> x,
                                       std::int64_t mc_samples,
                                       std::uint64_t seed) {
  if (mc_samples < 1)
    throw InvalidArgumentError("mc_samples must be at least 1");
  if (!loss.can_sample())
    throw UnsupportedError("loss family does not admit fresh samples");
  RngStream root(seed);
  const std::size_t d = static_cast<std::size_t>(loss.dim());
  Vec sum = zeros(d);
  Vec sum_sq = zeros(d);
  for (std::int64_t i = 0; i < mc_samples; ++i) {
    RngStream s = root.child(static_cast<std::uint64_t>(i));
    const Sample xi = draw_sample(loss.family(), loss.dim(), loss.lipschitz(),
                                  loss.params(), i, s);
    const Vec g = loss.gradient(x, xi);
    for (std::size_t j = 0; j < d; ++j) {
      sum[j] += g[j];
      sum_sq[j] += g[j] * g[j];
    }
  }
  const double n = static_cast<double>(mc_samples);
  PopulationGradient out;
  out.mean = scaled(sum, 1.0 / n);
  double var_total = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double var = sum_sq[j] / n - out.mean[j] * out.mean[j];
    var_total += std::max(0.0, var);
  }
  out.standard_error = std::sqrt(var_total / n);
  return out;
}

}  // namespace dpg
