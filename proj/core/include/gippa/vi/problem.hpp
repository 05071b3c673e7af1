#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "gippa/vi/weight_operator.hpp"

namespace gippa::vi {

/// Mixed variational inequality: find w* ∈ Ω with
///   θ(w) − θ(w*) + ⟨w − w*, F(w*)⟩ ≥ 0  for all w ∈ Ω.
///
/// The proximal subproblem is implicit, so the problem supplies its own
/// resolvent: resolvent(z, λ, G) returns the unique w⁺ ∈ Ω with
///   θ(w) − θ(w⁺) + ⟨w − w⁺, F(w⁺) + λ⁻¹G(w⁺ − z)⟩ ≥ 0  for all w ∈ Ω.
///
/// All oracles must tolerate concurrent read-only calls.
struct MixedViProblem {
  using Resolvent =
      std::function<Vector(std::span<const double>, double, const WeightOperator&)>;

  std::size_t dim = 0;
  std::function<double(std::span<const double>)> theta;
  std::function<Vector(std::span<const double>)> F;
  Resolvent resolvent;
  /// Monotonicity modulus of F: ⟨u−v, F(u)−F(v)⟩ ≥ ‖u−v‖²_H. Absent means 0.
  std::optional<WeightOperator> H;
  /// Euclidean projection onto Ω (identity when Ω is the whole space).
  std::function<Vector(std::span<const double>)> project_omega;

  /// Membership in Ω with absolute tolerance 1e-10.
  bool omega_contains(std::span<const double> w) const;
};

/// Absolute tolerance used for Ω membership checks.
inline constexpr double kOmegaTolerance = 1e-10;

}  // namespace gippa::vi
