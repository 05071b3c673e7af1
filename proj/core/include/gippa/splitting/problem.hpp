#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>

#include "gippa/prox/prox.hpp"
#include "gippa/vi/problem.hpp"
#include "gippa/vi/schedule.hpp"
#include "gippa/vi/weight_operator.hpp"

namespace gippa::splitting {

using numkit::DenseMatrix;
using numkit::Vector;

/// Raised when an operation needs structure the problem does not carry,
/// such as an exact ADMM subproblem solve for a general coupling matrix.
class UnsupportedFixture : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear operator ℝ^in → ℝ^out with its adjoint.
struct LinearMap {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::function<Vector(std::span<const double>)> apply;
  std::function<Vector(std::span<const double>)> adjoint;
  std::optional<DenseMatrix> dense;
  bool is_identity = false;

  static LinearMap from_matrix(DenseMatrix a);
  static LinearMap identity(std::size_t n);
};

/// ½xᵀPx + cᵀx
struct QuadraticObjective {
  DenseMatrix P;
  Vector c;
  double value(std::span<const double> x) const;
  Vector gradient(std::span<const double> x) const;
};

/// min f(x) + g(y)  s.t.  Ax + By = b, x ∈ 𝒳, y ∈ 𝒴.
/// Set constraints are folded into the prox oracles (and their `project`).
struct SeparableProblem {
  std::size_t n1 = 0, n2 = 0, m = 0;
  LinearMap A, B;
  Vector b;
  prox::ProxOracle f, g;
  /// Upper bounds on ρ(AᵀA) and ρ(BᵀB).
  double rho_AtA = 1.0, rho_BtB = 1.0;
  /// Present when f (resp. g) is an unconstrained quadratic; enables exact
  /// ADMM subproblems and the dense mixed-VI resolvent.
  std::optional<QuadraticObjective> f_quad, g_quad;

  /// Throws std::invalid_argument on inconsistent dimensions or missing oracles.
  void validate() const;
  /// Ax + By − b
  Vector residual(std::span<const double> x, std::span<const double> y) const;
};

/// w = (x, y, p)
struct PrimalDualPoint {
  Vector x, y, p;

  static PrimalDualPoint zeros(const SeparableProblem& prob);
  static PrimalDualPoint unflatten(std::span<const double> w, std::size_t n1,
                                   std::size_t n2, std::size_t m);
  Vector flatten() const;
  bool all_finite() const noexcept;
};

struct LadmmParams {
  double beta = 1.0;
  double tau = 0.99;
  double eta = 0.99;
  /// α ≡ 0 gives plain LADMM.
  vi::InertialSchedule schedule = vi::InertialSchedule::constant(0.0);

  /// Throws unless β, τ, η > 0. Returns true when τρ(AᵀA) < 1 and
  /// ηρ(BᵀB) < 1, the regime in which G is positive definite.
  bool validate(const SeparableProblem& prob) const;
};

/// Weighting operator of the linearized ADMM, acting on flattened (x, y, p):
///   G = blkdiag(β(I/τ − AᵀA), [[βI/η, −Bᵀ], [−B, I/β]]),
///   ‖w‖²_G = β(‖x‖²/τ − ‖Ax‖²) + (β/η)‖y‖² − 2⟨By, p⟩ + ‖p‖²/β.
vi::WeightOperator g_ladmm(const SeparableProblem& prob, double beta, double tau, double eta);
vi::WeightOperator g_ladmm(const SeparableProblem& prob, const LadmmParams& params);

/// Weighting operator of the exact ADMM: blkdiag(0, [[βBᵀB, −Bᵀ], [−B, I/β]]).
/// Positive semidefinite, never definite.
vi::WeightOperator g_admm(const SeparableProblem& prob, double beta);

/// θ(w) = f(x) + g(y), F(w) = (−Aᵀp, −Bᵀp, Ax + By − b), Ω = 𝒳 × 𝒴 × ℝ^m, H = 0.
/// The resolvent is available when both objectives are quadratic and A, B
/// are dense; otherwise calling it throws UnsupportedFixture.
vi::MixedViProblem to_mixed_vi(const SeparableProblem& prob);

/// ℒ = f(x) + g(y) − ⟨p, Ax + By − b⟩
double lagrangian(const SeparableProblem& prob, std::span<const double> x,
                  std::span<const double> y, std::span<const double> p);
/// ℒ̄ = ℒ + (β/2)‖Ax + By − b‖²
double aug_lagrangian(const SeparableProblem& prob, std::span<const double> x,
                      std::span<const double> y, std::span<const double> p, double beta);

}  // namespace gippa::splitting
