#include "gippa/vi/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gippa/numkit/linalg.hpp"
#include "gippa/numkit/rng.hpp"
#include "gippa/prox/prox.hpp"

namespace gippa::vi {

namespace nk = numkit;

namespace {

DenseMatrix symmetric_part(const DenseMatrix& a) {
  DenseMatrix s = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  }
  return s;
}

// Scalar γ when g acts as γI on ℝⁿ; nullopt otherwise.
std::optional<double> scalar_weight(const WeightOperator& g) {
  const DenseMatrix m = g.materialize();
  const double gamma = m(0, 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double expect = i == j ? gamma : 0.0;
      if (std::abs(m(i, j) - expect) > 1e-14 * std::max(1.0, std::abs(gamma))) {
        return std::nullopt;
      }
    }
  }
  return gamma;
}

}  // namespace

Vector solve_affine_vi(const DenseMatrix& a, std::span<const double> c,
                       const std::optional<Box>& box) {
  Vector rhs = nk::scaled(c, -1.0);
  Vector w = nk::solve_linear(a, rhs);
  if (!box) return w;

  // Projected iteration w ← P(w − γ(Aw + c)) contracts with factor
  // √(1 − σ²/L²) for γ = σ/L², σ = λ_min(sym A), L = ‖A‖₂.
  const double sigma = nk::symmetric_eigenvalues(symmetric_part(a)).front();
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("solve_affine_vi: symmetric part of A is not positive definite");
  }
  const double l2 = nk::symmetric_eigenvalues(nk::multiply_at_b(a, a)).back();
  const double step = sigma / l2;
  w = prox::project_box(w, box->lo, box->hi);
  for (int it = 0; it < 2000000; ++it) {
    Vector grad = nk::matvec(a, w);
    nk::axpy(1.0, c, grad);
    Vector next = w;
    nk::axpy(-step, grad, next);
    next = prox::project_box(next, box->lo, box->hi);
    const double change = nk::max_abs_diff(next, w);
    w = std::move(next);
    if (change <= 1e-15 * std::max(1.0, nk::norm2(w))) break;
  }
  return w;
}

AffineViFixture make_affine_vi(std::size_t n, double mu, nk::SeededRng& rng,
                               std::optional<Box> box) {
  if (n == 0) throw std::invalid_argument("make_affine_vi: dimension must be positive");
  if (!(mu > 0.0)) throw std::invalid_argument("make_affine_vi: mu must be positive");
  if (box && (box->lo.size() != n || box->hi.size() != n)) {
    throw std::invalid_argument("make_affine_vi: box dimension mismatch");
  }
  const DenseMatrix r = nk::rng_normal(rng, n, n);
  const DenseMatrix k = nk::rng_normal(rng, n, n);
  DenseMatrix m = nk::multiply_a_bt(r, r);
  m *= 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) += mu;
    for (std::size_t j = 0; j < n; ++j) m(i, j) += 0.5 * (k(i, j) - k(j, i));
  }
  Vector q(n);
  for (double& v : q) v = rng.normal();

  AffineViFixture fx;
  fx.M = m;
  fx.q = q;
  fx.mu = mu;
  fx.w_star = solve_affine_vi(m, q, box);

  MixedViProblem& p = fx.problem;
  p.dim = n;
  p.theta = [](std::span<const double>) { return 0.0; };
  p.F = [m, q](std::span<const double> w) {
    Vector out = nk::matvec(m, w);
    nk::axpy(1.0, q, out);
    return out;
  };
  p.resolvent = [m, q, box](std::span<const double> z, double lambda,
                            const WeightOperator& g) {
    // F(w) + λ⁻¹G(w − z), scaled by λ: (λM + G)w + λq − Gz.
    DenseMatrix a = g.materialize();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += lambda * m(i, j);
    }
    Vector c = nk::scaled(q, lambda);
    nk::axpy(-1.0, g.apply(z), c);
    return solve_affine_vi(a, c, box);
  };
  p.H = WeightOperator::scaled_identity(n, mu);
  if (box) {
    p.project_omega = [box](std::span<const double> w) {
      return prox::project_box(w, box->lo, box->hi);
    };
  }
  return fx;
}

MixedViProblem make_identity_gradient(std::size_t n) {
  MixedViProblem p;
  p.dim = n;
  p.theta = [](std::span<const double>) { return 0.0; };
  p.F = [](std::span<const double> w) { return Vector(w.begin(), w.end()); };
  p.resolvent = [n](std::span<const double> z, double lambda, const WeightOperator& g) {
    // λw + G(w − z) = 0
    DenseMatrix a = g.materialize();
    for (std::size_t i = 0; i < n; ++i) a(i, i) += lambda;
    return nk::solve_linear(a, g.apply(z));
  };
  p.H = WeightOperator::identity(n);
  return p;
}

L1Fixture make_l1_strongly_monotone(Vector c, double kappa, double mu) {
  if (!(kappa > 0.0) || !(mu > 0.0)) {
    throw std::invalid_argument("make_l1_strongly_monotone: kappa and mu must be positive");
  }
  L1Fixture fx;
  fx.c = c;
  fx.kappa = kappa;
  fx.mu = mu;
  fx.w_star = prox::soft_threshold(c, kappa / mu);
  const std::size_t n = c.size();

  MixedViProblem& p = fx.problem;
  p.dim = n;
  p.theta = [kappa](std::span<const double> w) { return kappa * nk::norm1(w); };
  p.F = [c, mu](std::span<const double> w) {
    Vector out = nk::subtract(w, c);
    for (double& v : out) v *= mu;
    return out;
  };
  p.resolvent = [c, kappa, mu](std::span<const double> z, double lambda,
                               const WeightOperator& g) {
    const auto gamma = scalar_weight(g);
    if (!gamma || !(*gamma > 0.0)) {
      throw std::invalid_argument("l1 fixture resolvent: G must be a positive multiple of I");
    }
    // argmin κ‖w‖₁ + (μ/2)‖w − c‖² + (γ/2λ)‖w − z‖²
    const double s = mu + *gamma / lambda;
    Vector center(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      center[i] = (mu * c[i] + (*gamma / lambda) * z[i]) / s;
    }
    return prox::soft_threshold(center, kappa / s);
  };
  p.H = WeightOperator::scaled_identity(n, mu);
  return fx;
}

}  // namespace gippa::vi
