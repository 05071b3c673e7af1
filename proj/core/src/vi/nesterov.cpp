#include "gippa/vi/nesterov.hpp"

#include <cmath>
#include <stdexcept>

namespace gippa::vi {

double nesterov_next_t(double t) { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t)); }

SolverTrace nesterov_ippa(const ProxFn& prox_f, const std::function<double(std::size_t)>& lambda_seq,
                          std::span<const double> w0, std::size_t steps,
                          const std::function<double(std::span<const double>)>& f) {
  if (!prox_f) throw std::invalid_argument("nesterov_ippa: prox oracle is required");
  SolverTrace trace;
  Vector w_prev(w0.begin(), w0.end());
  Vector w = w_prev;
  double t = 1.0;
  trace.t_sequence.push_back(t);
  trace.iterates.push_back(w);
  if (f) trace.objective.push_back(f(w));

  for (std::size_t k = 0; k < steps; ++k) {
    const double t_next = nesterov_next_t(t);
    const double alpha = (t - 1.0) / t_next;
    const double lambda = lambda_seq ? lambda_seq(k) : 1.0;
    if (!(lambda > 0.0)) throw std::invalid_argument("nesterov_ippa: lambda must be positive");
    Vector bar = w;
    for (std::size_t i = 0; i < w.size(); ++i) bar[i] += alpha * (w[i] - w_prev[i]);
    Vector next = prox_f(bar, lambda);

    trace.alphas.push_back(alpha);
    trace.lambdas.push_back(lambda);
    trace.t_sequence.push_back(t_next);
    trace.extrapolated.push_back(bar);
    w_prev = std::move(w);
    w = std::move(next);
    trace.iterates.push_back(w);
    if (f) trace.objective.push_back(f(w));
    t = t_next;
    trace.iterations = k + 1;
  }
  trace.converged = true;
  return trace;
}

}  // namespace gippa::vi
