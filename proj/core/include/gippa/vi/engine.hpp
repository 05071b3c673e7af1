#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "gippa/vi/problem.hpp"
#include "gippa/vi/schedule.hpp"
#include "gippa/vi/trace.hpp"
#include "gippa/vi/weight_operator.hpp"

namespace gippa::vi {

struct InertialStep {
  Vector w_bar;
  Vector w_next;
};

/// w̄ = w_k + α(w_k − w_km1), then w_next = resolvent(w̄, λ, G).
/// Throws std::runtime_error if the resolvent leaves Ω.
InertialStep inertial_ppa_step(const MixedViProblem& problem, const WeightOperator& g,
                               std::span<const double> w_k, std::span<const double> w_km1,
                               double alpha, double lambda);

struct StopRule {
  double tol = 1e-5;
  std::size_t max_iter = 1000;
};

struct RunOptions {
  /// Known solution; enables phi.
  std::optional<Vector> w_star;
  /// Objective recorded at every iterate when set.
  std::function<double(std::span<const double>)> objective;
  bool keep_iterates = true;
};

/// ‖next − ref‖ / (1 + ‖ref‖)
double relative_change(std::span<const double> next, std::span<const double> ref);

/// Runs the inertial proximal point method from w⁰ = w^{−1} = w0. Stops when
/// relative_change(w^{k+1}, w̄^k) < tol or after max_iter steps; hitting the
/// cap leaves trace.converged false.
SolverTrace run_inertial_ppa(const MixedViProblem& problem, const WeightOperator& g,
                             const InertialSchedule& schedule, std::span<const double> w0,
                             const StopRule& stop = {}, const RunOptions& options = {});

/// Implicit heavy-ball discretization with step h and friction γ:
/// λ = h²/(1 + γh), α = 1/(1 + γh).
struct HbfParams {
  double lambda;
  double alpha;
};
HbfParams hbf_params(double h, double gamma);

}  // namespace gippa::vi
