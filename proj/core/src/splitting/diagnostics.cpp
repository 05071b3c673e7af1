#include "gippa/splitting/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gippa/numkit/linalg.hpp"
#include "gippa/numkit/rng.hpp"

namespace gippa::splitting {

namespace nk = numkit;

std::vector<PrimalDualPoint> sample_probes(const SeparableProblem& prob,
                                           const PrimalDualPoint& center, std::size_t count,
                                           nk::SeededRng& rng, double radius) {
  std::vector<PrimalDualPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    PrimalDualPoint w = center;
    for (Vector* v : {&w.x, &w.y, &w.p}) {
      for (double& e : *v) e += rng.uniform(-radius, radius);
    }
    if (prob.f.project) w.x = prob.f.project(w.x);
    if (prob.g.project) w.y = prob.g.project(w.y);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<PrimalDualPoint> sample_probes_multiscale(const SeparableProblem& prob,
                                                      const PrimalDualPoint& center,
                                                      std::size_t count, nk::SeededRng& rng) {
  static constexpr double kRadii[] = {1e-4, 1e-2, 1.0, 10.0};
  std::vector<PrimalDualPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto one = sample_probes(prob, center, 1, rng, kRadii[i % 4]);
    out.push_back(std::move(one.front()));
  }
  return out;
}

double vi_residual_check(const SeparableProblem& prob, const LadmmParams& params,
                         const PrimalDualPoint& w_k, const PrimalDualPoint& w_kp1,
                         const std::vector<PrimalDualPoint>& probes) {
  const vi::WeightOperator g = g_ladmm(prob, params);
  const Vector next = w_kp1.flatten();
  const Vector gd = g.apply(nk::subtract(next, w_k.flatten()));
  // F(w⁺) = (−Aᵀp⁺, −Bᵀp⁺, Ax⁺ + By⁺ − b)
  PrimalDualPoint f;
  f.x = nk::scaled(prob.A.adjoint(w_kp1.p), -1.0);
  f.y = nk::scaled(prob.B.adjoint(w_kp1.p), -1.0);
  f.p = prob.residual(w_kp1.x, w_kp1.y);
  Vector dir = f.flatten();
  nk::axpy(1.0, gd, dir);
  const double theta_next = prob.f.objective(w_kp1.x) + prob.g.objective(w_kp1.y);

  double worst = std::numeric_limits<double>::infinity();
  for (const auto& probe : probes) {
    const double theta = prob.f.objective(probe.x) + prob.g.objective(probe.y);
    const Vector diff = nk::subtract(probe.flatten(), next);
    worst = std::min(worst, theta - theta_next + nk::dot(diff, dir));
  }
  return worst;
}

double lagrangian_gap(const SeparableProblem& prob, const PrimalDualPoint& avg,
                      const PrimalDualPoint& probe) {
  return lagrangian(prob, avg.x, avg.y, probe.p) - lagrangian(prob, probe.x, probe.y, avg.p);
}

ErgodicReport ergodic_report(const vi::SolverTrace& trace, const SeparableProblem& prob,
                             const vi::WeightOperator& g, const std::vector<std::size_t>& ks,
                             std::size_t probes_per_k, nk::SeededRng& rng) {
  if (trace.iterates.empty()) {
    throw std::invalid_argument("ergodic_report: trace has no stored iterates");
  }
  const Vector& w0 = trace.iterates.front();
  ErgodicReport rep;
  for (std::size_t k : ks) {
    if (k + 1 >= trace.iterates.size()) {
      throw std::invalid_argument("ergodic_report: trace shorter than requested k");
    }
    Vector mean(w0.size(), 0.0);
    for (std::size_t i = 1; i <= k + 1; ++i) nk::axpy(1.0, trace.iterates[i], mean);
    for (double& v : mean) v /= static_cast<double>(k + 1);
    const PrimalDualPoint avg = PrimalDualPoint::unflatten(mean, prob.n1, prob.n2, prob.m);

    ErgodicCheck check;
    check.k = k;
    check.worst_excess = -std::numeric_limits<double>::infinity();
    // Half the probes near the average, half near the start point.
    auto probes = sample_probes_multiscale(prob, avg, probes_per_k - probes_per_k / 2, rng);
    const auto start = PrimalDualPoint::unflatten(w0, prob.n1, prob.n2, prob.m);
    for (auto& pr : sample_probes_multiscale(prob, start, probes_per_k / 2, rng)) {
      probes.push_back(std::move(pr));
    }
    for (const auto& probe : probes) {
      const double gap = lagrangian_gap(prob, avg, probe);
      const double bound =
          g.quad_diff(probe.flatten(), w0) / (2.0 * static_cast<double>(k + 1));
      check.worst_excess = std::max(check.worst_excess, gap - bound);
    }
    check.holds = check.worst_excess <= 1e-8;
    rep.holds = rep.holds && check.holds;
    rep.checks.push_back(check);
  }
  return rep;
}

NonergodicReport nonergodic_report(const vi::SolverTrace& trace, const vi::WeightOperator& g,
                                   std::span<const double> w_star) {
  if (trace.iterates.empty()) {
    throw std::invalid_argument("nonergodic_report: trace has no stored iterates");
  }
  NonergodicReport rep;
  const auto& it = trace.iterates;
  rep.phi0 = g.quad_diff(it.front(), w_star);
  double phi_prev = rep.phi0;
  double first_norm = 0.0;
  double prev_norm = 0.0;
  for (std::size_t k = 1; k < it.size(); ++k) {
    const double d = std::max(0.0, g.quad_diff(it[k], it[k - 1]));
    const double norm = std::sqrt(d);
    rep.sq_diffs.push_back(d);
    rep.k_times_sq.push_back(static_cast<double>(k) * d);
    if (k == 1) {
      first_norm = norm;
    } else if (rep.monotone && norm > prev_norm + 1e-12 * first_norm + 1e-14) {
      rep.monotone = false;
      rep.monotone_violation = k;
    }
    prev_norm = norm;
    if (rep.rate_holds && static_cast<double>(k) * d > rep.phi0 + 1e-8) {
      rep.rate_holds = false;
      rep.rate_violation = k;
    }
    const double phi = g.quad_diff(it[k], w_star);
    if (rep.contraction_holds && phi > phi_prev - d + 1e-10) {
      rep.contraction_holds = false;
      rep.contraction_violation = k;
    }
    phi_prev = phi;
  }
  return rep;
}

}  // namespace gippa::splitting
