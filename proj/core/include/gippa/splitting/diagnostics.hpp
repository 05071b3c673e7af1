#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gippa/splitting/problem.hpp"
#include "gippa/vi/trace.hpp"

namespace gippa::numkit {
class SeededRng;
}

namespace gippa::splitting {

/// Probes uniform in the box of half-width `radius` around `center`, with
/// the x and y blocks projected onto 𝒳 and 𝒴.
std::vector<PrimalDualPoint> sample_probes(const SeparableProblem& prob,
                                           const PrimalDualPoint& center, std::size_t count,
                                           numkit::SeededRng& rng, double radius = 10.0);

/// Like sample_probes, cycling the half-width through 1e−4, 1e−2, 1 and 10.
std::vector<PrimalDualPoint> sample_probes_multiscale(const SeparableProblem& prob,
                                                      const PrimalDualPoint& center,
                                                      std::size_t count, numkit::SeededRng& rng);

/// min over probes w of
///   θ(w) − θ(w⁺) + ⟨w − w⁺, F(w⁺) + G(w⁺ − w_k)⟩
/// with G the linearized-ADMM weighting. Nonnegative up to round-off when
/// w⁺ = ladmm_step(w_k).
double vi_residual_check(const SeparableProblem& prob, const LadmmParams& params,
                         const PrimalDualPoint& w_k, const PrimalDualPoint& w_kp1,
                         const std::vector<PrimalDualPoint>& probes);

struct ErgodicCheck {
  std::size_t k = 0;
  /// Largest ℒ(x̄, ȳ, p) − ℒ(x, y, p̄) − ‖w − w⁰‖²_G/(2(k+1)) over the probes.
  double worst_excess = 0.0;
  bool holds = true;
};

struct ErgodicReport {
  std::vector<ErgodicCheck> checks;
  bool holds = true;
};

/// Averages w̄^k = (1/(k+1)) Σ_{i=0..k} w^{i+1} of a plain-LADMM trace and
/// checks the saddle-gap bound at each requested k for `probes_per_k` probes
/// drawn around w̄^k and w⁰ at several scales. Tolerance 1e−8.
ErgodicReport ergodic_report(const vi::SolverTrace& trace, const SeparableProblem& prob,
                             const vi::WeightOperator& g, const std::vector<std::size_t>& ks,
                             std::size_t probes_per_k, numkit::SeededRng& rng);

/// Saddle gap ℒ(x̄, ȳ, p) − ℒ(x, y, p̄) between an average w̄ and a probe w.
double lagrangian_gap(const SeparableProblem& prob, const PrimalDualPoint& avg,
                      const PrimalDualPoint& probe);

struct NonergodicReport {
  /// ‖w^k − w^{k−1}‖²_G for k = 1..K (index k−1).
  std::vector<double> sq_diffs;
  /// k‖w^k − w^{k−1}‖²_G
  std::vector<double> k_times_sq;
  double phi0 = 0.0;
  bool monotone = true;
  std::optional<std::size_t> monotone_violation;
  bool rate_holds = true;
  std::optional<std::size_t> rate_violation;
  /// φ_{k+1} ≤ φ_k − ‖w^{k+1} − w^k‖²_G + 1e−10
  bool contraction_holds = true;
  std::optional<std::size_t> contraction_violation;

  bool ok() const noexcept { return monotone && rate_holds && contraction_holds; }
};

/// Checks a plain-LADMM trace against a known solution: successive G-norm
/// differences nonincreasing (1e−12 relative to the first one, plus 1e−14),
/// k‖Δw^k‖²_G ≤ ‖w⁰ − w*‖²_G + 1e−8, and the PPA contraction.
NonergodicReport nonergodic_report(const vi::SolverTrace& trace, const vi::WeightOperator& g,
                                   std::span<const double> w_star);

}  // namespace gippa::splitting
