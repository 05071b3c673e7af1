#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gippa/vi/problem.hpp"
#include "gippa/vi/trace.hpp"
#include "gippa/vi/weight_operator.hpp"

namespace gippa::numkit {
class SeededRng;
}

namespace gippa::vi {

/// Slack of the resolvent inequality at probe w:
///   θ(w) − θ(w⁺) + ⟨w − w⁺, F(w⁺) + λ⁻¹G(w⁺ − center)⟩.
/// Nonnegative for every w ∈ Ω when w⁺ = resolvent(center, λ, G).
double vi_slack(const MixedViProblem& problem, const WeightOperator& g,
                std::span<const double> probe, std::span<const double> w_next,
                std::span<const double> center, double lambda);

/// Same slack without the proximal term: the mixed VI itself at a candidate w*.
double solution_slack(const MixedViProblem& problem, std::span<const double> probe,
                      std::span<const double> w_star);

/// Points uniform in the box of half-width `radius` around `center`, projected onto Ω.
std::vector<Vector> sample_omega_probes(const MixedViProblem& problem,
                                        std::span<const double> center, std::size_t count,
                                        double radius, numkit::SeededRng& rng);

struct InertialRateReport {
  double alpha = 0.0;     // largest α in the trace
  double constant = 0.0;  // 1 + 2/(1 − 3α)
  double phi0 = 0.0;      // ‖w⁰ − w*‖²_G
  /// min_{i<k} ‖w^{i+1} − w̄^i‖²_G for k = 1..K (index k−1).
  std::vector<double> min_residual;
  std::vector<double> bound;
  /// k · min_residual[k−1], for inspecting the o(1/k) trend.
  std::vector<double> k_times_min;
  bool rate_holds = true;
  std::optional<std::size_t> first_violation;

  /// φ_k ≤ α^k φ₀ + φ₀/(1 − α) + 1e−8
  bool fejer_holds = true;
  std::optional<std::size_t> fejer_violation;

  /// Σ_k ‖w^{k+1} − w̄^k‖²_G ≤ constant · φ₀
  double residual_sum = 0.0;
  bool summable_holds = true;

  bool ok() const noexcept { return rate_holds && fejer_holds && summable_holds; }
};

/// Checks the O(1/k) bound on the best step residual of an inertial run with
/// nondecreasing α_k ≤ α < 1/3. Needs trace.iterates and trace.step_residuals.
InertialRateReport check_inertial_rate_bound(const SolverTrace& trace, const WeightOperator& g,
                                    std::span<const double> w_star);

/// min over sampled pairs u, v ∈ Ω of ⟨u−v, F(u)−F(v)⟩ − ‖u−v‖²_H.
double h_monotone_slack(const MixedViProblem& problem, std::span<const double> center,
                        std::size_t pairs, double radius, numkit::SeededRng& rng);

/// min over sampled unit vectors of ‖v‖²_G (plus ‖v‖²_H when h is given).
double min_sampled_quad(const WeightOperator& g, const WeightOperator* h,
                        std::size_t samples, numkit::SeededRng& rng);

/// max over sampled v of |quad(v) − ⟨v, apply(v)⟩| / max(1, |quad(v)|).
double quad_consistency_error(const WeightOperator& g, std::size_t samples,
                              numkit::SeededRng& rng);

}  // namespace gippa::vi
