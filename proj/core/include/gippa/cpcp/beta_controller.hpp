#pragma once

#include <cstddef>

namespace gippa::cpcp {

/// Penalty tuning during the first iterations of a solve:
///   r_k = β_k‖𝒜(L^k + S^k) − b‖² / (2s(‖L^k‖_* + λ‖S^k‖₁)),
///   β_{k+1} = max(β_k/2, β_min) if r_k < 0.1,  min(2β_k, β_max) if r_k > 5,
///   β_k otherwise.
/// An objective of zero makes r_k = 0. After `active_iters` updates the
/// controller freezes and β stays fixed for the rest of the run.
struct BetaController {
  double beta = 1.0;
  double s = 1.0;
  std::size_t active_iters = 30;
  std::size_t updates = 0;
  double beta_min = 1e-3;
  double beta_max = 1e2;
  double r_low = 0.1;
  double r_high = 5.0;

  bool active() const noexcept { return updates < active_iters; }
};

/// r_k for the given penalty, squared residual norm, and objective value.
double beta_ratio(double beta, double residual_sq, double objective, double s);

/// One application of the rule; returns the new β and records the update.
/// Does nothing once the controller is frozen.
double update_beta(BetaController& controller, double residual_sq, double objective);

}  // namespace gippa::cpcp
