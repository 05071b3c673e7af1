#pragma once

#include <cstddef>
#include <optional>

#include "gippa/vi/problem.hpp"

namespace gippa::numkit {
class SeededRng;
}

namespace gippa::vi {

struct Box {
  Vector lo;
  Vector hi;
};

/// Affine VI with θ ≡ 0 and F(w) = Mw + q, where the symmetric part of M is
/// at least μI. Ω is ℝⁿ or a box. H = μI.
struct AffineViFixture {
  MixedViProblem problem;
  DenseMatrix M;
  Vector q;
  double mu = 0.0;
  Vector w_star;
};

/// Random instance: M = μI + RRᵀ/n + (K − Kᵀ)/2 with R, K standard normal.
AffineViFixture make_affine_vi(std::size_t n, double mu, numkit::SeededRng& rng,
                               std::optional<Box> box = std::nullopt);

/// Solves the box-constrained affine VI  ⟨v − w, Aw + c⟩ ≥ 0 for all v in the
/// box, with A having a positive definite symmetric part, by projected
/// fixed-point iteration. An absent box means a plain linear solve.
Vector solve_affine_vi(const DenseMatrix& a, std::span<const double> c,
                       const std::optional<Box>& box);

/// θ ≡ 0, F(w) = w on ℝⁿ: the gradient of ½‖w‖². w* = 0, H = I.
MixedViProblem make_identity_gradient(std::size_t n);

/// θ(w) = κ‖w‖₁, F(w) = μ(w − c) on ℝⁿ. Its resolvent is closed form for
/// G = γI (throws otherwise). w* = soft(c, κ/μ).
struct L1Fixture {
  MixedViProblem problem;
  Vector c;
  double kappa = 0.0;
  double mu = 0.0;
  Vector w_star;
};
L1Fixture make_l1_strongly_monotone(Vector c, double kappa, double mu);

}  // namespace gippa::vi
