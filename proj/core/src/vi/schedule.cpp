#include "gippa/vi/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gippa::vi {

namespace {

void require_alpha(double alpha, const char* what) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(std::string(what) + ": alpha must lie in [0, 1), got " +
                                std::to_string(alpha));
  }
}

}  // namespace

double summable_alpha(std::size_t k, std::span<const double> w_k,
                      std::span<const double> w_km1, const WeightOperator& g,
                      double alpha_max, double c) {
  if (k < 1) throw std::invalid_argument("summable_alpha: k must be >= 1");
  if (!(c > 0.0)) throw std::invalid_argument("summable_alpha: C must be positive");
  require_alpha(alpha_max, "summable_alpha");
  const double diff = std::max(g.quad_diff(w_k, w_km1),
                               std::numeric_limits<double>::epsilon());
  const double kk = static_cast<double>(k);
  return std::min(alpha_max, c / (kk * kk * diff));
}

InertialSchedule::InertialSchedule(Kind kind, double alpha_max, std::size_t ramp,
                                   double c)
    : kind_(kind), alpha_max_(alpha_max), ramp_(ramp), guard_c_(c) {
  require_alpha(alpha_max, "InertialSchedule");
}

InertialSchedule InertialSchedule::constant(double alpha) {
  return InertialSchedule(Kind::Constant, alpha, 0, 0.0);
}

InertialSchedule InertialSchedule::nondecreasing_capped(double alpha_max,
                                                        std::size_t ramp) {
  return InertialSchedule(Kind::NondecreasingCapped, alpha_max, ramp, 0.0);
}

InertialSchedule InertialSchedule::summable_guard(double alpha_max, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("summable_guard: C must be positive");
  return InertialSchedule(Kind::SummableGuard, alpha_max, 0, c);
}

InertialSchedule& InertialSchedule::with_lambdas(std::function<double(std::size_t)> seq,
                                                 double floor) {
  if (!(floor > 0.0)) throw std::invalid_argument("with_lambdas: floor must be positive");
  lambda_seq_ = std::move(seq);
  lambda_floor_ = floor;
  return *this;
}

InertialSchedule& InertialSchedule::with_constant_lambda(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("with_constant_lambda: lambda must be positive");
  lambda_seq_ = [lambda](std::size_t) { return lambda; };
  lambda_floor_ = lambda;
  return *this;
}

bool InertialSchedule::in_rate_regime() const noexcept {
  return kind_ != Kind::SummableGuard && alpha_max_ < 1.0 / 3.0;
}

double InertialSchedule::alpha(std::size_t k, std::span<const double> w_k,
                               std::span<const double> w_km1,
                               const WeightOperator& g) const {
  switch (kind_) {
    case Kind::Constant:
      return alpha_max_;
    case Kind::NondecreasingCapped:
      if (ramp_ == 0) return alpha_max_;
      return alpha_max_ *
             std::min(1.0, static_cast<double>(k) / static_cast<double>(ramp_));
    case Kind::SummableGuard:
      // w^0 = w^{-1}: the first step carries no momentum.
      if (k == 0) return 0.0;
      return summable_alpha(k, w_k, w_km1, g, alpha_max_, guard_c_);
  }
  return 0.0;
}

double InertialSchedule::lambda(std::size_t k) const {
  if (!lambda_seq_) return 1.0;
  const double l = lambda_seq_(k);
  if (!(l >= lambda_floor_)) {
    throw std::runtime_error("InertialSchedule: lambda_" + std::to_string(k) + " = " +
                             std::to_string(l) + " below floor " +
                             std::to_string(lambda_floor_));
  }
  return l;
}

}  // namespace gippa::vi
