#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "gippa/vi/weight_operator.hpp"

namespace gippa::vi {

/// Online rule that keeps Σ α_k‖w^k − w^{k−1}‖²_G summable:
///   α_k = min(α_max, C / (k² · max(‖w^k − w^{k−1}‖²_G, ε_mach))).
/// Each term is then at most C/k², so the series is bounded by C·π²/6.
double summable_alpha(std::size_t k, std::span<const double> w_k,
                      std::span<const double> w_km1, const WeightOperator& g,
                      double alpha_max, double c);

/// Inertial weights α_k and proximal steps λ_k for the inertial PPA.
///
/// - Constant(α): α_k ≡ α.
/// - NondecreasingCapped(α_max, ramp): α_k = α_max·min(1, k/ramp), a
///   nondecreasing sequence reaching α_max after `ramp` iterations.
/// - SummableGuard(α_max, C): α_k from summable_alpha().
///
/// Weights are accepted in [0, 1). The O(1/k) rate certificate additionally
/// needs a nondecreasing sequence below 1/3; in_rate_regime() reports it.
class InertialSchedule {
 public:
  enum class Kind { Constant, NondecreasingCapped, SummableGuard };

  static InertialSchedule constant(double alpha);
  static InertialSchedule nondecreasing_capped(double alpha_max, std::size_t ramp);
  static InertialSchedule summable_guard(double alpha_max, double c = 1.0);

  /// λ_k from `seq`, which must stay at or above `floor` > 0. Default λ_k ≡ 1.
  InertialSchedule& with_lambdas(std::function<double(std::size_t)> seq, double floor);
  InertialSchedule& with_constant_lambda(double lambda);

  Kind kind() const noexcept { return kind_; }
  double alpha_max() const noexcept { return alpha_max_; }
  double lambda_floor() const noexcept { return lambda_floor_; }
  bool in_rate_regime() const noexcept;

  /// α_k given the two latest iterates (only SummableGuard reads them).
  double alpha(std::size_t k, std::span<const double> w_k,
               std::span<const double> w_km1, const WeightOperator& g) const;
  /// λ_k; throws if the sequence drops below the floor.
  double lambda(std::size_t k) const;

 private:
  InertialSchedule(Kind kind, double alpha_max, std::size_t ramp, double c);

  Kind kind_;
  double alpha_max_;
  std::size_t ramp_;
  double guard_c_;
  double lambda_floor_ = 1.0;
  std::function<double(std::size_t)> lambda_seq_;
};

}  // namespace gippa::vi
