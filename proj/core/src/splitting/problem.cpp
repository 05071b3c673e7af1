#include "gippa/splitting/problem.hpp"

#include <cmath>
#include <string>

#include "gippa/numkit/linalg.hpp"

namespace gippa::splitting {

namespace nk = numkit;

LinearMap LinearMap::from_matrix(DenseMatrix a) {
  LinearMap map;
  map.in_dim = a.cols();
  map.out_dim = a.rows();
  map.apply = [a](std::span<const double> x) { return nk::matvec(a, x); };
  map.adjoint = [a](std::span<const double> y) { return nk::matvec_transpose(a, y); };
  map.dense = std::move(a);
  return map;
}

LinearMap LinearMap::identity(std::size_t n) {
  LinearMap map;
  map.in_dim = n;
  map.out_dim = n;
  map.apply = [](std::span<const double> x) { return Vector(x.begin(), x.end()); };
  map.adjoint = map.apply;
  map.dense = DenseMatrix::identity(n);
  map.is_identity = true;
  return map;
}

double QuadraticObjective::value(std::span<const double> x) const {
  return 0.5 * nk::dot(x, nk::matvec(P, x)) + nk::dot(c, x);
}

Vector QuadraticObjective::gradient(std::span<const double> x) const {
  Vector gr = nk::matvec(P, x);
  nk::axpy(1.0, c, gr);
  return gr;
}

void SeparableProblem::validate() const {
  if (!A.apply || !A.adjoint || !B.apply || !B.adjoint) {
    throw std::invalid_argument("SeparableProblem: A and B need apply and adjoint");
  }
  if (A.in_dim != n1 || B.in_dim != n2 || A.out_dim != m || B.out_dim != m) {
    throw std::invalid_argument("SeparableProblem: operator dimensions disagree with n1, n2, m");
  }
  if (b.size() != m) throw std::invalid_argument("SeparableProblem: b has wrong length");
  if (!f.eval || !f.objective || !g.eval || !g.objective) {
    throw std::invalid_argument("SeparableProblem: f and g need eval and objective oracles");
  }
  if (!(rho_AtA > 0.0) || !(rho_BtB > 0.0)) {
    throw std::invalid_argument("SeparableProblem: spectral bounds must be positive");
  }
  if (f_quad && (f_quad->P.rows() != n1 || f_quad->c.size() != n1)) {
    throw std::invalid_argument("SeparableProblem: f quadratic has wrong size");
  }
  if (g_quad && (g_quad->P.rows() != n2 || g_quad->c.size() != n2)) {
    throw std::invalid_argument("SeparableProblem: g quadratic has wrong size");
  }
}

Vector SeparableProblem::residual(std::span<const double> x, std::span<const double> y) const {
  Vector r = A.apply(x);
  nk::axpy(1.0, B.apply(y), r);
  nk::axpy(-1.0, b, r);
  return r;
}

PrimalDualPoint PrimalDualPoint::zeros(const SeparableProblem& prob) {
  return {Vector(prob.n1, 0.0), Vector(prob.n2, 0.0), Vector(prob.m, 0.0)};
}

PrimalDualPoint PrimalDualPoint::unflatten(std::span<const double> w, std::size_t n1,
                                           std::size_t n2, std::size_t m) {
  if (w.size() != n1 + n2 + m) {
    throw std::invalid_argument("PrimalDualPoint::unflatten: length mismatch");
  }
  PrimalDualPoint pt;
  pt.x.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n1));
  pt.y.assign(w.begin() + static_cast<std::ptrdiff_t>(n1),
              w.begin() + static_cast<std::ptrdiff_t>(n1 + n2));
  pt.p.assign(w.begin() + static_cast<std::ptrdiff_t>(n1 + n2), w.end());
  return pt;
}

Vector PrimalDualPoint::flatten() const {
  Vector w;
  w.reserve(x.size() + y.size() + p.size());
  w.insert(w.end(), x.begin(), x.end());
  w.insert(w.end(), y.begin(), y.end());
  w.insert(w.end(), p.begin(), p.end());
  return w;
}

bool PrimalDualPoint::all_finite() const noexcept {
  for (const Vector* v : {&x, &y, &p}) {
    for (double e : *v) {
      if (!std::isfinite(e)) return false;
    }
  }
  return true;
}

bool LadmmParams::validate(const SeparableProblem& prob) const {
  if (!(beta > 0.0) || !(tau > 0.0) || !(eta > 0.0)) {
    throw std::invalid_argument("LadmmParams: beta, tau and eta must be positive");
  }
  return tau * prob.rho_AtA < 1.0 && eta * prob.rho_BtB < 1.0;
}

vi::WeightOperator g_ladmm(const SeparableProblem& prob, double beta, double tau,
                           double eta) {
  const std::size_t n1 = prob.n1, n2 = prob.n2, m = prob.m;
  const LinearMap a = prob.A;
  const LinearMap bm = prob.B;
  auto apply = [=](std::span<const double> w) {
    const auto x = w.subspan(0, n1);
    const auto y = w.subspan(n1, n2);
    const auto p = w.subspan(n1 + n2, m);
    Vector out(n1 + n2 + m);
    const Vector atax = a.adjoint(a.apply(x));
    for (std::size_t i = 0; i < n1; ++i) out[i] = beta * (x[i] / tau - atax[i]);
    const Vector btp = bm.adjoint(p);
    for (std::size_t i = 0; i < n2; ++i) out[n1 + i] = beta / eta * y[i] - btp[i];
    const Vector by = bm.apply(y);
    for (std::size_t i = 0; i < m; ++i) out[n1 + n2 + i] = -by[i] + p[i] / beta;
    return out;
  };
  auto quad = [=](std::span<const double> w) {
    const auto x = w.subspan(0, n1);
    const auto y = w.subspan(n1, n2);
    const auto p = w.subspan(n1 + n2, m);
    return beta * (nk::squared_norm(x) / tau - nk::squared_norm(a.apply(x))) +
           beta / eta * nk::squared_norm(y) - 2.0 * nk::dot(bm.apply(y), p) +
           nk::squared_norm(p) / beta;
  };
  const bool pd = tau * prob.rho_AtA <= 1.0 && eta * prob.rho_BtB <= 1.0;
  return vi::WeightOperator(n1 + n2 + m, apply, quad, pd);
}

vi::WeightOperator g_ladmm(const SeparableProblem& prob, const LadmmParams& params) {
  return g_ladmm(prob, params.beta, params.tau, params.eta);
}

vi::WeightOperator g_admm(const SeparableProblem& prob, double beta) {
  const std::size_t n1 = prob.n1, n2 = prob.n2, m = prob.m;
  const LinearMap bm = prob.B;
  auto apply = [=](std::span<const double> w) {
    const auto y = w.subspan(n1, n2);
    const auto p = w.subspan(n1 + n2, m);
    Vector out(n1 + n2 + m, 0.0);
    const Vector by = bm.apply(y);
    const Vector bt = bm.adjoint(by);
    const Vector btp = bm.adjoint(p);
    for (std::size_t i = 0; i < n2; ++i) out[n1 + i] = beta * bt[i] - btp[i];
    for (std::size_t i = 0; i < m; ++i) out[n1 + n2 + i] = -by[i] + p[i] / beta;
    return out;
  };
  auto quad = [=](std::span<const double> w) {
    const auto y = w.subspan(n1, n2);
    const auto p = w.subspan(n1 + n2, m);
    // ‖√β By − p/√β‖²
    Vector by = bm.apply(y);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = std::sqrt(beta) * by[i] - p[i] / std::sqrt(beta);
      s += d * d;
    }
    return s;
  };
  return vi::WeightOperator(n1 + n2 + m, apply, quad, true);
}

double lagrangian(const SeparableProblem& prob, std::span<const double> x,
                  std::span<const double> y, std::span<const double> p) {
  return prob.f.objective(x) + prob.g.objective(y) - nk::dot(p, prob.residual(x, y));
}

double aug_lagrangian(const SeparableProblem& prob, std::span<const double> x,
                      std::span<const double> y, std::span<const double> p, double beta) {
  const Vector r = prob.residual(x, y);
  return prob.f.objective(x) + prob.g.objective(y) - nk::dot(p, r) +
         0.5 * beta * nk::squared_norm(r);
}

vi::MixedViProblem to_mixed_vi(const SeparableProblem& prob) {
  prob.validate();
  const std::size_t n = prob.n1 + prob.n2 + prob.m;
  vi::MixedViProblem vp;
  vp.dim = n;
  vp.theta = [prob](std::span<const double> w) {
    return prob.f.objective(w.subspan(0, prob.n1)) +
           prob.g.objective(w.subspan(prob.n1, prob.n2));
  };
  vp.F = [prob](std::span<const double> w) {
    const auto x = w.subspan(0, prob.n1);
    const auto y = w.subspan(prob.n1, prob.n2);
    const auto p = w.subspan(prob.n1 + prob.n2, prob.m);
    PrimalDualPoint out;
    out.x = nk::scaled(prob.A.adjoint(p), -1.0);
    out.y = nk::scaled(prob.B.adjoint(p), -1.0);
    out.p = prob.residual(x, y);
    return out.flatten();
  };
  vp.project_omega = [prob](std::span<const double> w) {
    PrimalDualPoint pt = PrimalDualPoint::unflatten(w, prob.n1, prob.n2, prob.m);
    if (prob.f.project) pt.x = prob.f.project(pt.x);
    if (prob.g.project) pt.y = prob.g.project(pt.y);
    return pt.flatten();
  };
  vp.resolvent = [prob](std::span<const double> z, double lambda,
                           const vi::WeightOperator& g) -> Vector {
    if (!prob.f_quad || !prob.g_quad || !prob.A.dense || !prob.B.dense) {
      throw UnsupportedFixture(
          "mixed-VI resolvent needs quadratic f, g and dense A, B");
    }
    // ∇θ(w) + F(w) + λ⁻¹G(w − z) = 0, linear in w.
    DenseMatrix sys = g.materialize();
    sys *= 1.0 / lambda;
    const std::size_t n1 = prob.n1, n2 = prob.n2;
    const DenseMatrix& a = *prob.A.dense;
    const DenseMatrix& bm = *prob.B.dense;
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) sys(i, j) += prob.f_quad->P(i, j);
    for (std::size_t i = 0; i < n2; ++i)
      for (std::size_t j = 0; j < n2; ++j) sys(n1 + i, n1 + j) += prob.g_quad->P(i, j);
    for (std::size_t r = 0; r < prob.m; ++r) {
      for (std::size_t j = 0; j < n1; ++j) {
        sys(n1 + n2 + r, j) += a(r, j);
        sys(j, n1 + n2 + r) -= a(r, j);
      }
      for (std::size_t j = 0; j < n2; ++j) {
        sys(n1 + n2 + r, n1 + j) += bm(r, j);
        sys(n1 + j, n1 + n2 + r) -= bm(r, j);
      }
    }
    Vector rhs = nk::scaled(g.apply(z), 1.0 / lambda);
    for (std::size_t i = 0; i < n1; ++i) rhs[i] -= prob.f_quad->c[i];
    for (std::size_t i = 0; i < n2; ++i) rhs[n1 + i] -= prob.g_quad->c[i];
    for (std::size_t r = 0; r < prob.m; ++r) rhs[n1 + n2 + r] += prob.b[r];
    return nk::solve_linear(sys, rhs);
  };
  return vp;
}

}  // namespace gippa::splitting
