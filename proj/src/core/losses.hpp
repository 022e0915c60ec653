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
// Synthetic Lipschitz nonsmooth component losses f(x; xi) with analytic
// values and Clarke subgradients, plus datasets of samples xi.
//
// Families and payload encodings:
//   euclidean-distance   f(x;xi) = L * |x - p|            payload p in R^d
//   truncated-distance   f(x;xi) = L * min(|x - p|, c)    payload p in R^d
//   max-of-linears       f(x;xi) = max_i <a_i, x> + b_i   payload is k blocks
//                        of (d+1) doubles [a_i(0..d-1), b_i], |a_i| = L
//   linear               f(x;xi) = <c, x>, sample independent (test loss)
//
// Nondifferentiable points use a deterministic tie-break: the lowest piece
// index wins, and distance kinks (x == p) return the zero vector.

#ifndef DPGOLDSTEIN_CORE_LOSSES_HPP_
#define DPGOLDSTEIN_CORE_LOSSES_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/rng.hpp"
#include "core/vecops.hpp"

namespace dpg {

struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;

  void validate() const;  // epsilon > 0, 0 < delta < 1
};

struct GoldsteinTarget {
  double alpha = 0.0;  // ball radius
  double beta = 0.0;   // norm threshold

  void validate() const;  // both positive
};

enum class LossFamily {
  kEuclideanDistance,
  kTruncatedDistance,
  kMaxOfLinears,
  kLinear,
  kCustom,
};

LossFamily parse_family(std::string_view tag);
std::string family_tag(LossFamily family);

struct FamilyParams {
  double trunc_c = 1.0;  // truncated-distance length scale
  int pieces = 4;        // max-of-linears piece count
};

struct Sample {
  std::int64_t id = 0;
  Vec payload;
};

// Ordered immutable sample collection with a consumption cursor for
// single-pass oracles. Copies share the sample storage; the cursor is
// per-copy state.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<Sample> samples);

  std::size_t size() const { return samples_ ? samples_->size() : 0; }
  std::size_t cursor() const { return cursor_; }
  std::size_t remaining() const { return size() - cursor_; }
  const Sample& at(std::size_t i) const { return (*samples_)[i]; }
  std::span<const Sample> all() const {
    return samples_ ? std::span<const Sample>(*samples_)
                    : std::span<const Sample>();
  }

  // Returns the next `count` unused samples and advances the cursor.
  // Throws BudgetExhaustedError if fewer than `count` remain.
  std::span<const Sample> take(std::size_t count);

 private:
  std::shared_ptr<const std::vector<Sample>> samples_;
  std::size_t cursor_ = 0;
};

// Draws one sample from the family's population distribution (standard
// normal payload entries; max-of-linears directions are uniform on the
// L-sphere with standard normal offsets).
Sample draw_sample(LossFamily family, int d, double lipschitz,
                   const FamilyParams& params, std::int64_t id,
                   RngStream& stream);

// Deterministic for a fixed (family, n, d, seed).
Dataset make_synthetic_dataset(LossFamily family, std::int64_t n, int d,
                               std::uint64_t seed, double lipschitz = 1.0,
                               const FamilyParams& params = {});
Dataset make_synthetic_dataset(std::string_view family_tag, std::int64_t n,
                               int d, std::uint64_t seed,
                               double lipschitz = 1.0,
                               const FamilyParams& params = {});

// A component loss f(.; xi): value and Clarke subgradient, L-Lipschitz in x.
class ComponentLoss {
 public:
  using ValueFn =
      std::function<double(std::span<const double>, const Sample&)>;
  using GradFn = std::function<Vec(std::span<const double>, const Sample&)>;

  static ComponentLoss euclidean_distance(int d, double lipschitz);
  static ComponentLoss truncated_distance(int d, double lipschitz, double c);
  static ComponentLoss max_of_linears(int d, double lipschitz, int pieces);
  static ComponentLoss linear(Vec coefficients);
  // Test hook: arbitrary callables; pass a null GradFn for value-only.
  static ComponentLoss custom(int d, double lipschitz, double range_bound,
                              ValueFn value, GradFn grad);
  static ComponentLoss from_tag(std::string_view tag, int d, double lipschitz,
                                const FamilyParams& params = {});

  LossFamily family() const { return family_; }
  int dim() const { return d_; }
  double lipschitz() const { return lipschitz_; }
  const FamilyParams& params() const { return params_; }
  bool has_value() const { return static_cast<bool>(value_); }
  bool has_gradient() const { return static_cast<bool>(grad_); }

  double value(std::span<const double> x, const Sample& xi) const;
  Vec gradient(std::span<const double> x, const Sample& xi) const;

  // Upper estimate of F(x0) - inf F for the family (documented closed
  // forms; a heuristic for max-of-linears).
  double range_bound(std::span<const double> x0) const;

  // Same loss with the gradient capability removed.
  ComponentLoss value_only() const;

  // Whether fresh population samples can be drawn (synthetic families).
  bool can_sample() const { return family_ != LossFamily::kCustom; }

 private:
  ComponentLoss() = default;

  LossFamily family_ = LossFamily::kCustom;
  int d_ = 0;
  double lipschitz_ = 0.0;
  double range_bound_const_ = 0.0;  // used by custom / linear
  FamilyParams params_;
  Vec linear_c_;
  ValueFn value_;
  GradFn grad_;
};

struct PopulationGradient {
  Vec mean;
  double standard_error = 0.0;  // sqrt(sum of coordinate variances / N)
};

// Monte Carlo estimate of E_xi[grad f(x; xi)] over fresh population samples.
// Test oracle only.
PopulationGradient population_gradient(const ComponentLoss& loss,
                                       std::span<const double> x,
                                       std::int64_t mc_samples,
                                       std::uint64_t seed);

}  // namespace dpg

#endif  // DPGOLDSTEIN_CORE_LOSSES_HPP_
