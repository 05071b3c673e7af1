#pragma once

#include <cstddef>
#include <vector>

#include "gippa/numkit/dense_matrix.hpp"

namespace gippa::vi {

using numkit::Vector;

/// Per-iteration record of an inertial run. After K steps:
///   iterates, phi, objective        hold K + 1 entries (k = 0..K) when recorded;
///   alphas, lambdas, delta,
///   step_residuals, stop_residuals  hold K entries (one per step);
///   extrapolated                    holds the K centers w̄^k when iterates are kept;
///   betas                           one per step for solvers with a varying penalty;
///   t_sequence                      t_0..t_K for the Nesterov scheme.
struct SolverTrace {
  std::vector<Vector> iterates;
  std::vector<Vector> extrapolated;
  std::vector<double> phi;
  std::vector<double> delta;
  std::vector<double> step_residuals;
  std::vector<double> stop_residuals;
  std::vector<double> alphas;
  std::vector<double> lambdas;
  std::vector<double> objective;
  std::vector<double> betas;
  std::vector<double> t_sequence;
  std::size_t iterations = 0;
  bool converged = false;

  /// True when every recorded sequence has the length implied by `iterations`.
  bool lengths_consistent() const noexcept;
};

}  // namespace gippa::vi
