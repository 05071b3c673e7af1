#pragma once

#include <cstddef>

#include "gippa/splitting/problem.hpp"

namespace gippa::numkit {
class SeededRng;
}

namespace gippa::splitting {

/// Equality-constrained QP
///   min ½xᵀPx + cᵀx + ½yᵀQy + dᵀy  s.t.  Ax + By = b
/// with P, Q positive definite and A, B standard normal, plus its KKT solution.
struct QpFixture {
  SeparableProblem problem;
  PrimalDualPoint kkt;
  LadmmParams params;  // β = 1, τ = 0.99/ρ(AᵀA), η = 0.99/ρ(BᵀB)
};

QpFixture make_qp_fixture(std::size_t n1, std::size_t n2, std::size_t m,
                          numkit::SeededRng& rng);

/// Wraps dense A, B and quadratic objectives into a SeparableProblem with
/// exact spectral bounds.
SeparableProblem make_quadratic_problem(DenseMatrix a, DenseMatrix b, Vector rhs,
                                        QuadraticObjective f, QuadraticObjective g);

/// Solves the KKT system
///   [P 0 −Aᵀ; 0 Q −Bᵀ; A B 0] (x, y, p) = (−c, −d, b).
PrimalDualPoint kkt_solve(const SeparableProblem& prob);

}  // namespace gippa::splitting
