#include "gippa/vi/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gippa/numkit/linalg.hpp"
#include "gippa/numkit/rng.hpp"

namespace gippa::vi {

namespace nk = numkit;

double vi_slack(const MixedViProblem& problem, const WeightOperator& g,
                std::span<const double> probe, std::span<const double> w_next,
                std::span<const double> center, double lambda) {
  Vector dir = problem.F(w_next);
  const Vector gd = g.apply(nk::subtract(w_next, center));
  nk::axpy(1.0 / lambda, gd, dir);
  const Vector diff = nk::subtract(probe, w_next);
  return problem.theta(probe) - problem.theta(w_next) + nk::dot(diff, dir);
}

double solution_slack(const MixedViProblem& problem, std::span<const double> probe,
                      std::span<const double> w_star) {
  const Vector f = problem.F(w_star);
  const Vector diff = nk::subtract(probe, w_star);
  return problem.theta(probe) - problem.theta(w_star) + nk::dot(diff, f);
}

std::vector<Vector> sample_omega_probes(const MixedViProblem& problem,
                                        std::span<const double> center, std::size_t count,
                                        double radius, nk::SeededRng& rng) {
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vector w(center.begin(), center.end());
    for (double& v : w) v += rng.uniform(-radius, radius);
    if (problem.project_omega) w = problem.project_omega(w);
    out.push_back(std::move(w));
  }
  return out;
}

InertialRateReport check_inertial_rate_bound(const SolverTrace& trace, const WeightOperator& g,
                                    std::span<const double> w_star) {
  if (trace.iterates.empty()) {
    throw std::invalid_argument("check_inertial_rate_bound: trace has no stored iterates");
  }
  if (trace.step_residuals.size() != trace.iterations) {
    throw std::invalid_argument("check_inertial_rate_bound: step residuals missing");
  }
  InertialRateReport rep;
  for (double a : trace.alphas) rep.alpha = std::max(rep.alpha, a);
  if (!(rep.alpha < 1.0 / 3.0)) {
    throw std::invalid_argument("check_inertial_rate_bound: needs alpha < 1/3");
  }
  rep.constant = 1.0 + 2.0 / (1.0 - 3.0 * rep.alpha);
  rep.phi0 = g.quad_diff(trace.iterates.front(), w_star);

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= trace.iterations; ++k) {
    const double r = trace.step_residuals[k - 1];
    best = std::min(best, r);
    rep.residual_sum += r;
    const double bound = rep.constant * rep.phi0 / static_cast<double>(k);
    rep.min_residual.push_back(best);
    rep.bound.push_back(bound);
    rep.k_times_min.push_back(static_cast<double>(k) * best);
    if (best > bound + 1e-10 && rep.rate_holds) {
      rep.rate_holds = false;
      rep.first_violation = k;
    }
  }
  rep.summable_holds = rep.residual_sum <= rep.constant * rep.phi0 + 1e-10;

  double alpha_pow = 1.0;
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    const double phi = g.quad_diff(trace.iterates[k], w_star);
    const double cap = alpha_pow * rep.phi0 + rep.phi0 / (1.0 - rep.alpha) + 1e-8;
    if (phi > cap) {
      rep.fejer_holds = false;
      rep.fejer_violation = k;
      break;
    }
    alpha_pow *= rep.alpha;
  }
  return rep;
}

double h_monotone_slack(const MixedViProblem& problem, std::span<const double> center,
                        std::size_t pairs, double radius, nk::SeededRng& rng) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto pts = sample_omega_probes(problem, center, 2, radius, rng);
    const Vector d = nk::subtract(pts[0], pts[1]);
    const Vector fd = nk::subtract(problem.F(pts[0]), problem.F(pts[1]));
    double s = nk::dot(d, fd);
    if (problem.H) s -= problem.H->quad(d);
    worst = std::min(worst, s);
  }
  return worst;
}

double min_sampled_quad(const WeightOperator& g, const WeightOperator* h,
                        std::size_t samples, nk::SeededRng& rng) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    Vector v(g.dim());
    for (double& x : v) x = rng.normal();
    const double n = nk::norm2(v);
    if (n == 0.0) continue;
    for (double& x : v) x /= n;
    double q = g.quad(v);
    if (h) q += h->quad(v);
    worst = std::min(worst, q);
  }
  return worst;
}

double quad_consistency_error(const WeightOperator& g, std::size_t samples,
                              nk::SeededRng& rng) {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    Vector v(g.dim());
    for (double& x : v) x = rng.normal();
    const double q = g.quad(v);
    const double ref = nk::dot(v, g.apply(v));
    worst = std::max(worst, std::abs(q - ref) / std::max(1.0, std::abs(q)));
  }
  return worst;
}

}  // namespace gippa::vi
