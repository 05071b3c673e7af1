#include "gippa/splitting/fixtures.hpp"

#include "gippa/numkit/linalg.hpp"
#include "gippa/numkit/rng.hpp"

namespace gippa::splitting {

namespace nk = numkit;

namespace {

double spectral_radius_ata(const DenseMatrix& a) {
  return nk::symmetric_eigenvalues(nk::multiply_at_b(a, a)).back();
}

DenseMatrix random_spd(std::size_t n, nk::SeededRng& rng) {
  const DenseMatrix r = nk::rng_normal(rng, n, n);
  DenseMatrix p = nk::multiply_a_bt(r, r);
  p *= 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) p(i, i) += 0.5;
  return p;
}

}  // namespace

SeparableProblem make_quadratic_problem(DenseMatrix a, DenseMatrix b, Vector rhs,
                                        QuadraticObjective f, QuadraticObjective g) {
  SeparableProblem prob;
  prob.n1 = a.cols();
  prob.n2 = b.cols();
  prob.m = a.rows();
  // Small relative margin so the bound is never below the true radius.
  prob.rho_AtA = spectral_radius_ata(a) * (1.0 + 1e-12);
  prob.rho_BtB = spectral_radius_ata(b) * (1.0 + 1e-12);
  prob.A = LinearMap::from_matrix(std::move(a));
  prob.B = LinearMap::from_matrix(std::move(b));
  prob.b = std::move(rhs);
  prob.f = prox::quadratic_oracle(f.P, f.c);
  prob.g = prox::quadratic_oracle(g.P, g.c);
  prob.f_quad = std::move(f);
  prob.g_quad = std::move(g);
  prob.validate();
  return prob;
}

PrimalDualPoint kkt_solve(const SeparableProblem& prob) {
  if (!prob.f_quad || !prob.g_quad || !prob.A.dense || !prob.B.dense) {
    throw UnsupportedFixture("kkt_solve: needs quadratic objectives and dense operators");
  }
  const std::size_t n1 = prob.n1, n2 = prob.n2, m = prob.m, n = n1 + n2 + m;
  DenseMatrix k(n, n);
  Vector rhs(n, 0.0);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n1; ++j) k(i, j) = prob.f_quad->P(i, j);
    rhs[i] = -prob.f_quad->c[i];
  }
  for (std::size_t i = 0; i < n2; ++i) {
    for (std::size_t j = 0; j < n2; ++j) k(n1 + i, n1 + j) = prob.g_quad->P(i, j);
    rhs[n1 + i] = -prob.g_quad->c[i];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n1; ++j) {
      k(n1 + n2 + r, j) = (*prob.A.dense)(r, j);
      k(j, n1 + n2 + r) = -(*prob.A.dense)(r, j);
    }
    for (std::size_t j = 0; j < n2; ++j) {
      k(n1 + n2 + r, n1 + j) = (*prob.B.dense)(r, j);
      k(n1 + j, n1 + n2 + r) = -(*prob.B.dense)(r, j);
    }
    rhs[n1 + n2 + r] = prob.b[r];
  }
  return PrimalDualPoint::unflatten(nk::solve_linear(k, rhs), n1, n2, m);
}

QpFixture make_qp_fixture(std::size_t n1, std::size_t n2, std::size_t m,
                          nk::SeededRng& rng) {
  DenseMatrix a = nk::rng_normal(rng, m, n1);
  DenseMatrix b = nk::rng_normal(rng, m, n2);
  QuadraticObjective f{random_spd(n1, rng), Vector(n1)};
  QuadraticObjective g{random_spd(n2, rng), Vector(n2)};
  for (double& v : f.c) v = rng.normal();
  for (double& v : g.c) v = rng.normal();
  Vector rhs(m);
  for (double& v : rhs) v = rng.normal();

  QpFixture fx;
  fx.problem = make_quadratic_problem(std::move(a), std::move(b), std::move(rhs),
                                      std::move(f), std::move(g));
  fx.kkt = kkt_solve(fx.problem);
  fx.params.beta = 1.0;
  fx.params.tau = 0.99 / fx.problem.rho_AtA;
  fx.params.eta = 0.99 / fx.problem.rho_BtB;
  return fx;
}

}  // namespace gippa::splitting
