#include "gippa/splitting/steps.hpp"

#include "gippa/numkit/linalg.hpp"

namespace gippa::splitting {

namespace nk = numkit;

namespace {

// argmin h(z) − ⟨q, Mz⟩ + (β/2)‖Mz + r‖²
Vector exact_block(const LinearMap& map, const std::optional<QuadraticObjective>& quad,
                   const prox::ProxOracle& oracle, std::span<const double> q,
                   std::span<const double> r, double beta, const char* block) {
  if (quad && map.dense) {
    const DenseMatrix& m = *map.dense;
    DenseMatrix sys = nk::multiply_at_b(m, m);
    sys *= beta;
    sys += quad->P;
    Vector t(q.begin(), q.end());
    nk::axpy(-beta, r, t);
    Vector rhs = map.adjoint(t);
    nk::axpy(-1.0, quad->c, rhs);
    return nk::solve_linear(sys, rhs);
  }
  if (map.is_identity) {
    Vector center(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) center[i] = q[i] / beta - r[i];
    return oracle.eval(center, 1.0 / beta);
  }
  throw UnsupportedFixture(std::string("admm_step: no exact solver for the ") + block +
                           "-subproblem");
}

}  // namespace

PrimalDualPoint admm_step(const SeparableProblem& prob, double beta, const PrimalDualPoint& w) {
  if (!(beta > 0.0)) throw std::invalid_argument("admm_step: beta must be positive");
  PrimalDualPoint out;
  // x-subproblem: r = By − b
  Vector r = prob.B.apply(w.y);
  nk::axpy(-1.0, prob.b, r);
  out.x = exact_block(prob.A, prob.f_quad, prob.f, w.p, r, beta, "x");
  const Vector res = prob.residual(out.x, w.y);
  out.p = w.p;
  nk::axpy(-beta, res, out.p);
  // y-subproblem: r = Ax⁺ − b
  Vector r2 = prob.A.apply(out.x);
  nk::axpy(-1.0, prob.b, r2);
  out.y = exact_block(prob.B, prob.g_quad, prob.g, out.p, r2, beta, "y");
  return out;
}

PrimalDualPoint ladmm_step(const SeparableProblem& prob, const LadmmParams& params,
                           const PrimalDualPoint& w) {
  const double beta = params.beta, tau = params.tau, eta = params.eta;
  PrimalDualPoint out;

  const Vector r0 = prob.residual(w.x, w.y);
  // x − τAᵀ(r0 − p/β)
  Vector t = r0;
  nk::axpy(-1.0 / beta, w.p, t);
  Vector xin = w.x;
  nk::axpy(-tau, prob.A.adjoint(t), xin);
  out.x = prob.f.eval(xin, tau / beta);

  const Vector r1 = prob.residual(out.x, w.y);
  out.p = w.p;
  nk::axpy(-beta, r1, out.p);

  Vector t2 = r1;
  nk::axpy(-1.0 / beta, out.p, t2);
  Vector yin = w.y;
  nk::axpy(-eta, prob.B.adjoint(t2), yin);
  out.y = prob.g.eval(yin, eta / beta);
  return out;
}

InertialLadmmStep iladmm_step(const SeparableProblem& prob, const LadmmParams& params,
                              const PrimalDualPoint& w_k, const PrimalDualPoint& w_km1,
                              double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("iladmm_step: alpha must be >= 0");
  InertialLadmmStep out;
  out.w_bar = w_k;
  if (alpha != 0.0) {
    auto extrapolate = [alpha](Vector& bar, const Vector& cur, const Vector& prev) {
      for (std::size_t i = 0; i < bar.size(); ++i) bar[i] += alpha * (cur[i] - prev[i]);
    };
    extrapolate(out.w_bar.x, w_k.x, w_km1.x);
    extrapolate(out.w_bar.y, w_k.y, w_km1.y);
    extrapolate(out.w_bar.p, w_k.p, w_km1.p);
  }
  out.w_next = ladmm_step(prob, params, out.w_bar);
  return out;
}

vi::SolverTrace run_ladmm(const SeparableProblem& prob, const LadmmParams& params,
                          const PrimalDualPoint& w0, const vi::StopRule& stop,
                          const LadmmRunOptions& options) {
  prob.validate();
  params.validate(prob);
  const vi::WeightOperator g = g_ladmm(prob, params);
  vi::SolverTrace trace;
  PrimalDualPoint prev = w0;
  PrimalDualPoint cur = w0;
  Vector cur_flat = cur.flatten();
  Vector prev_flat = cur_flat;

  auto record_point = [&](const Vector& flat) {
    if (options.keep_iterates) trace.iterates.push_back(flat);
    if (options.w_star) trace.phi.push_back(g.quad_diff(flat, *options.w_star));
  };
  record_point(cur_flat);

  for (std::size_t k = 0; k < stop.max_iter; ++k) {
    const double alpha = params.schedule.alpha(k, cur_flat, prev_flat, g);
    InertialLadmmStep step = iladmm_step(prob, params, cur, prev, alpha);
    const Vector bar_flat = step.w_bar.flatten();
    Vector next_flat = step.w_next.flatten();

    trace.alphas.push_back(alpha);
    trace.lambdas.push_back(1.0);
    trace.delta.push_back(2.0 * alpha * g.quad_diff(cur_flat, prev_flat));
    trace.step_residuals.push_back(g.quad_diff(next_flat, bar_flat));
    const double rel = vi::relative_change(next_flat, bar_flat);
    trace.stop_residuals.push_back(rel);
    if (options.keep_iterates) trace.extrapolated.push_back(bar_flat);

    prev = std::move(cur);
    cur = std::move(step.w_next);
    prev_flat = std::move(cur_flat);
    cur_flat = std::move(next_flat);
    record_point(cur_flat);
    trace.iterations = k + 1;
    if (rel < stop.tol) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

}  // namespace gippa::splitting
