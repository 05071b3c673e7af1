#include "gippa/cpcp/beta_controller.hpp"

#include <algorithm>
#include <stdexcept>

namespace gippa::cpcp {

double beta_ratio(double beta, double residual_sq, double objective, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("beta_ratio: scale s must be positive");
  if (!(objective > 0.0)) return 0.0;
  return beta * residual_sq / (2.0 * s * objective);
}

double update_beta(BetaController& c, double residual_sq, double objective) {
  if (!c.active()) return c.beta;
  const double r = beta_ratio(c.beta, residual_sq, objective, c.s);
  if (r < c.r_low) {
    c.beta = std::max(0.5 * c.beta, c.beta_min);
  } else if (r > c.r_high) {
    c.beta = std::min(2.0 * c.beta, c.beta_max);
  }
  c.beta = std::clamp(c.beta, c.beta_min, c.beta_max);
  ++c.updates;
  return c.beta;
}

}  // namespace gippa::cpcp
