#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "gippa/vi/trace.hpp"

namespace gippa::vi {

/// argmin_w f(w) + ‖w − z‖²/(2λ)
using ProxFn = std::function<Vector(std::span<const double>, double)>;

/// Nesterov-weighted inertial PPA for min f:
///   t₀ = 1, t_{k+1} = (1 + √(1 + 4t_k²))/2,
///   w̄^k = w^k + ((t_k − 1)/t_{k+1})(w^k − w^{k−1}),
///   w^{k+1} = prox_f(w̄^k, λ_k),
/// from w^{−1} = w⁰, for K steps. Records t_sequence, alphas, lambdas,
/// iterates, and f(w^k) in objective when `f` is set.
SolverTrace nesterov_ippa(const ProxFn& prox_f, const std::function<double(std::size_t)>& lambda_seq,
                          std::span<const double> w0, std::size_t steps,
                          const std::function<double(std::span<const double>)>& f = {});

/// Next element of the t-sequence.
double nesterov_next_t(double t);

}  // namespace gippa::vi
