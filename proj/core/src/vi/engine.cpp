#include "gippa/vi/engine.hpp"

#include <cmath>
#include <stdexcept>

#include "gippa/numkit/linalg.hpp"

namespace gippa::vi {

namespace nk = numkit;

bool SolverTrace::lengths_consistent() const noexcept {
  const std::size_t k = iterations;
  auto per_iterate = [k](std::size_t n) { return n == 0 || n == k + 1; };
  auto per_step = [k](std::size_t n) { return n == 0 || n == k; };
  return per_iterate(iterates.size()) && per_iterate(phi.size()) &&
         per_iterate(objective.size()) && per_step(extrapolated.size()) &&
         per_step(delta.size()) && per_step(step_residuals.size()) &&
         per_step(stop_residuals.size()) && per_step(alphas.size()) &&
         per_step(lambdas.size()) && per_step(betas.size()) &&
         (t_sequence.empty() || t_sequence.size() == k + 1);
}

bool MixedViProblem::omega_contains(std::span<const double> w) const {
  if (w.size() != dim) return false;
  for (double v : w) {
    if (!std::isfinite(v)) return false;
  }
  if (!project_omega) return true;
  const Vector proj = project_omega(w);
  return nk::max_abs_diff(proj, w) <= kOmegaTolerance;
}

InertialStep inertial_ppa_step(const MixedViProblem& problem, const WeightOperator& g,
                               std::span<const double> w_k, std::span<const double> w_km1,
                               double alpha, double lambda) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("inertial_ppa_step: alpha must be >= 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("inertial_ppa_step: lambda must be > 0");
  if (w_k.size() != problem.dim || w_km1.size() != problem.dim) {
    throw std::invalid_argument("inertial_ppa_step: dimension mismatch");
  }
  InertialStep out;
  out.w_bar.assign(w_k.begin(), w_k.end());
  if (alpha != 0.0) {
    for (std::size_t i = 0; i < w_k.size(); ++i) out.w_bar[i] += alpha * (w_k[i] - w_km1[i]);
  }
  out.w_next = problem.resolvent(out.w_bar, lambda, g);
  if (!problem.omega_contains(out.w_next)) {
    throw std::runtime_error("inertial_ppa_step: resolvent returned a point outside Omega");
  }
  return out;
}

double relative_change(std::span<const double> next, std::span<const double> ref) {
  return nk::norm2(nk::subtract(next, ref)) / (1.0 + nk::norm2(ref));
}

SolverTrace run_inertial_ppa(const MixedViProblem& problem, const WeightOperator& g,
                             const InertialSchedule& schedule, std::span<const double> w0,
                             const StopRule& stop, const RunOptions& options) {
  if (!problem.omega_contains(w0)) {
    throw std::invalid_argument("run_inertial_ppa: w0 must lie in Omega");
  }
  SolverTrace trace;
  Vector w_prev(w0.begin(), w0.end());
  Vector w(w0.begin(), w0.end());

  auto record_point = [&](const Vector& pt) {
    if (options.keep_iterates) trace.iterates.push_back(pt);
    if (options.w_star) trace.phi.push_back(g.quad_diff(pt, *options.w_star));
    if (options.objective) trace.objective.push_back(options.objective(pt));
  };
  record_point(w);

  for (std::size_t k = 0; k < stop.max_iter; ++k) {
    const double alpha = schedule.alpha(k, w, w_prev, g);
    const double lambda = schedule.lambda(k);
    InertialStep step = inertial_ppa_step(problem, g, w, w_prev, alpha, lambda);

    trace.alphas.push_back(alpha);
    trace.lambdas.push_back(lambda);
    trace.delta.push_back(2.0 * alpha * g.quad_diff(w, w_prev));
    trace.step_residuals.push_back(g.quad_diff(step.w_next, step.w_bar));
    const double rel = relative_change(step.w_next, step.w_bar);
    trace.stop_residuals.push_back(rel);
    if (options.keep_iterates) trace.extrapolated.push_back(step.w_bar);

    w_prev = std::move(w);
    w = std::move(step.w_next);
    record_point(w);
    trace.iterations = k + 1;
    if (rel < stop.tol) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

HbfParams hbf_params(double h, double gamma) {
  if (!(h > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("hbf_params: step and friction must be positive");
  }
  const double denom = 1.0 + gamma * h;
  return {h * h / denom, 1.0 / denom};
}

}  // namespace gippa::vi
