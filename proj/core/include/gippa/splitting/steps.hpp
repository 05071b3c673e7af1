#pragma once

#include "gippa/splitting/problem.hpp"
#include "gippa/vi/engine.hpp"
#include "gippa/vi/trace.hpp"

namespace gippa::splitting {

/// Exact ADMM in x−p−y order:
///   x⁺ = argmin ℒ̄(x, y, p), p⁺ = p − β(Ax⁺ + By − b), y⁺ = argmin ℒ̄(x⁺, y, p⁺).
/// Each block needs either a quadratic objective with a dense operator or an
/// identity operator with a prox oracle; otherwise throws UnsupportedFixture.
PrimalDualPoint admm_step(const SeparableProblem& prob, double beta, const PrimalDualPoint& w);

/// Linearized ADMM in x−p−y order:
///   u = Aᵀ(Ax + By − b),   x⁺ = prox_f(x − τu + (τ/β)Aᵀp, τ/β),
///   p⁺ = p − β(Ax⁺ + By − b),
///   v = Bᵀ(Ax⁺ + By − b),  y⁺ = prox_g(y − ηv + (η/β)Bᵀp⁺, η/β).
/// The x-update is argmin f(x) − ⟨p, Ax⟩ + (β/2τ)‖x − (x − τu)‖² after
/// completing the square.
PrimalDualPoint ladmm_step(const SeparableProblem& prob, const LadmmParams& params,
                           const PrimalDualPoint& w);

struct InertialLadmmStep {
  PrimalDualPoint w_bar;
  PrimalDualPoint w_next;
};

/// Extrapolates all three blocks, w̄ = w_k + α(w_k − w_km1), then takes a
/// linearized ADMM step from w̄.
InertialLadmmStep iladmm_step(const SeparableProblem& prob, const LadmmParams& params,
                              const PrimalDualPoint& w_k, const PrimalDualPoint& w_km1,
                              double alpha);

struct LadmmRunOptions {
  /// Flattened known solution; enables trace.phi.
  std::optional<Vector> w_star;
  bool keep_iterates = true;
};

/// Runs (inertial) linearized ADMM with α_k from params.schedule. Iterates in
/// the trace are flattened (x, y, p). step_residuals hold ‖w^{k+1} − w̄^k‖²_G
/// and the run stops when ‖w^{k+1} − w̄^k‖/(1 + ‖w̄^k‖) < tol.
vi::SolverTrace run_ladmm(const SeparableProblem& prob, const LadmmParams& params,
                          const PrimalDualPoint& w0, const vi::StopRule& stop = {},
                          const LadmmRunOptions& options = {});

}  // namespace gippa::splitting
