#include "gippa/cpcp/solver.hpp"

#include <cmath>
#include <limits>
#include <tuple>
#include <stdexcept>

#include "gippa/numkit/linalg.hpp"
#include "gippa/prox/prox.hpp"

namespace gippa::cpcp {

namespace nk = numkit;

CpcpState CpcpState::zeros(const CpcpInstance& inst) {
  CpcpState w;
  w.L = DenseMatrix(inst.spec.m, inst.spec.n);
  w.S = DenseMatrix(inst.spec.m, inst.spec.n);
  w.p = Vector(inst.meas.measurement_dim(), 0.0);
  return w;
}

double stopping_residual(const CpcpState& next, const CpcpState& ref) {
  const double dl = nk::frobenius_distance(next.L, ref.L);
  const double ds = nk::frobenius_distance(next.S, ref.S);
  const double diff = dl * dl + ds * ds + nk::squared_norm(nk::subtract(next.p, ref.p));
  const double lf = ref.L.frobenius_norm(), sf = ref.S.frobenius_norm();
  const double ref_norm = std::sqrt(lf * lf + sf * sf + nk::squared_norm(ref.p));
  return std::sqrt(diff) / (1.0 + ref_norm);
}

double default_beta0(const CpcpInstance& inst, const BetaController& bounds) {
  const double b1 = nk::norm1(inst.b);
  if (!(b1 > 0.0)) return bounds.beta_max;
  return 0.1 * static_cast<double>(inst.meas.measurement_dim()) / b1;
}

Vector flatten_state(const CpcpState& w) {
  Vector out;
  out.reserve(w.L.size() + w.S.size() + w.p.size());
  out.insert(out.end(), w.L.data().begin(), w.L.data().end());
  out.insert(out.end(), w.S.data().begin(), w.S.data().end());
  out.insert(out.end(), w.p.begin(), w.p.end());
  return out;
}

vi::WeightOperator cpcp_weight(const CpcpInstance& inst, double beta, double tau, double eta) {
  const std::size_t m = inst.spec.m, n = inst.spec.n, mn = m * n;
  const std::size_t qd = inst.meas.measurement_dim();
  const MeasurementOp meas = inst.meas;
  auto split = [m, n, mn](std::span<const double> w) {
    DenseMatrix l(m, n, std::vector<double>(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(mn)));
    DenseMatrix s(m, n, std::vector<double>(w.begin() + static_cast<std::ptrdiff_t>(mn),
                                            w.begin() + static_cast<std::ptrdiff_t>(2 * mn)));
    Vector p(w.begin() + static_cast<std::ptrdiff_t>(2 * mn), w.end());
    return std::make_tuple(std::move(l), std::move(s), std::move(p));
  };
  auto apply = [=](std::span<const double> w) {
    auto [l, s, p] = split(w);
    Vector out(w.size());
    const DenseMatrix atal = meas.adjoint(meas.apply(l));
    const DenseMatrix atp = meas.adjoint(p);
    const Vector as = meas.apply(s);
    for (std::size_t i = 0; i < mn; ++i) {
      out[i] = beta * (l.data()[i] / tau - atal.data()[i]);
      out[mn + i] = beta / eta * s.data()[i] - atp.data()[i];
    }
    for (std::size_t i = 0; i < qd; ++i) out[2 * mn + i] = -as[i] + p[i] / beta;
    return out;
  };
  auto quad = [=](std::span<const double> w) {
    auto [l, s, p] = split(w);
    const double lf = l.frobenius_norm(), sf = s.frobenius_norm();
    return beta * (lf * lf / tau - nk::squared_norm(meas.apply(l))) + beta / eta * sf * sf -
           2.0 * nk::dot(meas.apply(s), p) + nk::squared_norm(p) / beta;
  };
  return vi::WeightOperator(2 * mn + qd, apply, quad, tau <= 1.0 && eta <= 1.0);
}

namespace {

struct StepOutput {
  CpcpState next;
  double nuclear = 0.0;  // ‖L^{k+1}‖_*
};

// One linearized step from the (possibly extrapolated) point `bar`.
StepOutput linearized_step(const CpcpInstance& inst, const CpcpState& bar, double beta,
                           double tau, double eta, DenseMatrix& warm_v) {
  const MeasurementOp& a = inst.meas;
  StepOutput out;
  CpcpState& nx = out.next;

  // L⁺ = svt(L̄ − τ𝒜*(𝒜(L̄ + S̄) − b − p̄/β), τ/β)
  Vector t = a.apply(bar.L + bar.S);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] -= inst.b[i] + bar.p[i] / beta;
  DenseMatrix lin = a.adjoint(t);
  lin *= -tau;
  lin += bar.L;
  prox::SvtResult sv = prox::svt_detailed(lin, tau / beta, warm_v.empty() ? nullptr : &warm_v);
  nx.L = std::move(sv.value);
  warm_v = std::move(sv.right_factor);
  for (double s : sv.singular_values) out.nuclear += s;

  // p⁺ = p̄ − β(𝒜(L⁺ + S̄) − b)
  Vector r1 = a.apply(nx.L + bar.S);
  for (std::size_t i = 0; i < r1.size(); ++i) r1[i] -= inst.b[i];
  nx.p = bar.p;
  nk::axpy(-beta, r1, nx.p);

  // S⁺ = soft(S̄ − η𝒜*(r1 − p⁺/β), λη/β)
  for (std::size_t i = 0; i < r1.size(); ++i) r1[i] -= nx.p[i] / beta;
  DenseMatrix sin = a.adjoint(r1);
  sin *= -eta;
  sin += bar.S;
  prox::soft_threshold_inplace(sin.data(), inst.lambda * eta / beta);
  nx.S = std::move(sin);
  nx.beta = beta;
  return out;
}

CpcpResult run_cpcp(const CpcpInstance& inst, const vi::InertialSchedule& schedule,
                    const CpcpOptions& opt) {
  if (!(opt.tau > 0.0 && opt.tau <= 1.0) || !(opt.eta > 0.0 && opt.eta <= 1.0)) {
    throw std::invalid_argument("cpcp: tau and eta must lie in (0, 1]");
  }
  BetaController ctrl;
  ctrl.s = opt.s;
  ctrl.active_iters = opt.beta_adapt_iters;
  ctrl.beta = opt.beta0 ? *opt.beta0 : default_beta0(inst, ctrl);
  if (!(ctrl.beta > 0.0) || !std::isfinite(ctrl.beta)) {
    throw std::invalid_argument("cpcp: initial beta must be positive and finite");
  }

  CpcpResult res;
  vi::SolverTrace& trace = res.trace;
  CpcpState cur = CpcpState::zeros(inst);
  cur.beta = ctrl.beta;
  CpcpState prev = cur;
  double nuclear_cur = 0.0;
  DenseMatrix warm_v;
  const bool guard = schedule.kind() == vi::InertialSchedule::Kind::SummableGuard;

  auto objective = [&](const CpcpState& w, double nuclear) {
    return nuclear + inst.lambda * nk::norm1(w.S.data());
  };
  trace.objective.push_back(0.0);

  for (std::size_t k = 0; k < opt.stop.max_iter; ++k) {
    const double beta = ctrl.beta;
    double alpha;
    if (guard) {
      const vi::WeightOperator g = cpcp_weight(inst, beta, opt.tau, opt.eta);
      alpha = schedule.alpha(k, flatten_state(cur), flatten_state(prev), g);
    } else {
      alpha = schedule.alpha(k, {}, {}, vi::WeightOperator::zero(0));
    }

    CpcpState bar = cur;
    if (alpha != 0.0) {
      auto extrapolate = [alpha](std::span<double> b, std::span<const double> c,
                                 std::span<const double> p) {
        for (std::size_t i = 0; i < b.size(); ++i) b[i] += alpha * (c[i] - p[i]);
      };
      extrapolate(bar.L.data(), cur.L.data(), prev.L.data());
      extrapolate(bar.S.data(), cur.S.data(), prev.S.data());
      extrapolate(bar.p, cur.p, prev.p);
    }

    StepOutput step = linearized_step(inst, bar, beta, opt.tau, opt.eta, warm_v);
    const double rel = stopping_residual(step.next, bar);

    trace.alphas.push_back(alpha);
    trace.lambdas.push_back(1.0);
    trace.betas.push_back(beta);
    trace.stop_residuals.push_back(rel);
    if (opt.record_g_residuals) {
      const vi::WeightOperator g = cpcp_weight(inst, beta, opt.tau, opt.eta);
      trace.step_residuals.push_back(g.quad_diff(flatten_state(step.next), flatten_state(bar)));
    }

    // Penalty for the next step, from the ratio at (L^k, S^k).
    if (ctrl.active()) {
      Vector r = inst.meas.apply(cur.L + cur.S);
      nk::axpy(-1.0, inst.b, r);
      update_beta(ctrl, nk::squared_norm(r), objective(cur, nuclear_cur));
    }

    prev = std::move(cur);
    cur = std::move(step.next);
    nuclear_cur = step.nuclear;
    cur.iter = k + 1;
    cur.beta = ctrl.beta;
    trace.objective.push_back(objective(cur, nuclear_cur));
    trace.iterations = k + 1;
    if (rel < opt.stop.tol) {
      trace.converged = true;
      break;
    }
  }
  res.state = std::move(cur);
  return res;
}

}  // namespace

CpcpResult ladmm_cpcp(const CpcpInstance& inst, const CpcpOptions& options) {
  return run_cpcp(inst, vi::InertialSchedule::constant(0.0), options);
}

CpcpResult iladmm_cpcp(const CpcpInstance& inst, const vi::InertialSchedule& schedule,
                       const CpcpOptions& options) {
  return run_cpcp(inst, schedule, options);
}

RecoveryMetrics recovery_metrics(const CpcpState& state, const CpcpInstance& inst,
                                 bool converged) {
  RecoveryMetrics m;
  const double l0 = inst.L0.frobenius_norm();
  const double s0 = inst.S0.frobenius_norm();
  const double dl = nk::frobenius_distance(state.L, inst.L0);
  const double ds = nk::frobenius_distance(state.S, inst.S0);
  m.relL_absolute = !(l0 > 0.0);
  m.relS_absolute = !(s0 > 0.0);
  m.relL = m.relL_absolute ? dl : dl / l0;
  m.relS = m.relS_absolute ? ds : ds / s0;
  m.iters = state.iter;
  m.converged = converged;
  m.q_over_dof = inst.dof == 0 ? std::numeric_limits<double>::infinity()
                               : static_cast<double>(inst.meas.measurement_dim()) /
                                     static_cast<double>(inst.dof);
  m.expected_failure = m.q_over_dof < kRecoverableQOverDof;
  Vector r = inst.meas.apply(state.L + state.S);
  nk::axpy(-1.0, inst.b, r);
  const double bn = nk::norm2(inst.b);
  m.feasibility = bn > 0.0 ? nk::norm2(r) / bn : nk::norm2(r);
  return m;
}

}  // namespace gippa::cpcp
