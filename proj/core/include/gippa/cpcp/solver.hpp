#pragma once

#include <cstddef>
#include <optional>

#include "gippa/cpcp/beta_controller.hpp"
#include "gippa/cpcp/instance.hpp"
#include "gippa/vi/engine.hpp"
#include "gippa/vi/schedule.hpp"
#include "gippa/vi/trace.hpp"
#include "gippa/vi/weight_operator.hpp"

namespace gippa::cpcp {

/// Iterate (L, S, p) plus the penalty in force and the step count.
struct CpcpState {
  DenseMatrix L;
  DenseMatrix S;
  Vector p;
  double beta = 0.0;
  std::size_t iter = 0;

  static CpcpState zeros(const CpcpInstance& inst);
};

struct CpcpOptions {
  double tau = 0.99;
  double eta = 0.99;
  vi::StopRule stop{1e-5, 1000};
  /// Initial penalty; default 0.1q/‖b‖₁ with q the measurement length.
  std::optional<double> beta0;
  /// Objective scale in the penalty rule.
  double s = 1.0;
  /// Number of penalty updates before β freezes; 0 keeps β fixed.
  std::size_t beta_adapt_iters = 30;
  /// Record ‖w^{k+1} − w̄^k‖²_G in trace.step_residuals (two extra transforms per step).
  bool record_g_residuals = false;
};

struct CpcpResult {
  CpcpState state;
  vi::SolverTrace trace;
};

/// ‖(L⁺, S⁺, p⁺) − ref‖ / (1 + ‖ref‖) with ‖(L, S, p)‖² = ‖L‖²_F + ‖S‖²_F + ‖p‖².
double stopping_residual(const CpcpState& next, const CpcpState& ref);

/// 0.1q/‖b‖₁; the upper penalty bound when b = 0.
double default_beta0(const CpcpInstance& inst, const BetaController& bounds = {});

/// Linearized ADMM from zeros; stops when the change relative to w^k is below tol.
CpcpResult ladmm_cpcp(const CpcpInstance& inst, const CpcpOptions& options = {});

/// Inertial linearized ADMM from w⁰ = w^{−1} = 0: extrapolate (L, S, p) with
/// α_k, then the linearized step from the extrapolated point. Stops when the
/// change relative to the extrapolated point is below tol.
CpcpResult iladmm_cpcp(const CpcpInstance& inst, const vi::InertialSchedule& schedule,
                       const CpcpOptions& options = {});

/// Weighting operator of the linearized scheme on flattened (L, S, p) with
/// A = B = 𝒜:  β(‖L‖²/τ − ‖𝒜L‖²) + (β/η)‖S‖² − 2⟨𝒜S, p⟩ + ‖p‖²/β.
vi::WeightOperator cpcp_weight(const CpcpInstance& inst, double beta, double tau, double eta);

/// Row-major L, then S, then p.
Vector flatten_state(const CpcpState& w);

struct RecoveryMetrics {
  double relL = 0.0;
  double relS = 0.0;
  /// True when a ground-truth norm is zero and the error is absolute.
  bool relL_absolute = false;
  bool relS_absolute = false;
  std::size_t iters = 0;
  bool converged = false;
  double q_over_dof = 0.0;
  /// ‖𝒜(L + S) − b‖ / ‖b‖ (absolute when b = 0)
  double feasibility = 0.0;
  /// q/dof below 3.5: recovery is not expected.
  bool expected_failure = false;
};

inline constexpr double kRecoverableQOverDof = 3.5;

RecoveryMetrics recovery_metrics(const CpcpState& state, const CpcpInstance& inst,
                                 bool converged);

}  // namespace gippa::cpcp
