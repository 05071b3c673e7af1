#include "gippa/prox/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gippa/numkit/linalg.hpp"

namespace gippa::prox {

namespace {

void require_positive(double kappa, const char* what) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument(std::string(what) + ": threshold must be positive, got " +
                                std::to_string(kappa));
  }
}

}  // namespace

void soft_threshold_inplace(std::span<double> v, double kappa) {
  require_positive(kappa, "soft_threshold");
  for (double& x : v) {
    const double a = std::abs(x) - kappa;
    x = a > 0.0 ? std::copysign(a, x) : 0.0;
  }
}

Vector soft_threshold(std::span<const double> v, double kappa) {
  Vector out(v.begin(), v.end());
  soft_threshold_inplace(out, kappa);
  return out;
}

SvtResult svt_detailed(const DenseMatrix& m, double kappa, const DenseMatrix* warm_v) {
  require_positive(kappa, "svt");
  numkit::SvdResult f = warm_v ? numkit::svd_warm(m, *warm_v) : numkit::svd(m);

  SvtResult out;
  out.sweeps = f.sweeps;
  out.singular_values.resize(f.s.size());
  std::size_t rank = 0;
  for (std::size_t k = 0; k < f.s.size(); ++k) {
    out.singular_values[k] = std::max(f.s[k] - kappa, 0.0);
    if (out.singular_values[k] > 0.0) rank = k + 1;
  }
  // U_r·diag(s_r)·V_rᵀ over the surviving rank only.
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  DenseMatrix value(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    auto vi = value.row(i);
    for (std::size_t k = 0; k < rank; ++k) {
      const double coef = f.U(i, k) * out.singular_values[k];
      if (coef == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) vi[j] += coef * f.V(j, k);
    }
  }
  out.value = std::move(value);
  out.right_factor = std::move(f.V);
  return out;
}

DenseMatrix svt(const DenseMatrix& m, double kappa) {
  return svt_detailed(m, kappa).value;
}

Vector project_box(std::span<const double> v, std::span<const double> lo,
                   std::span<const double> hi) {
  if (lo.size() != v.size() || hi.size() != v.size()) {
    throw std::invalid_argument("project_box: length mismatch");
  }
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(lo[i] <= hi[i])) {
      throw std::invalid_argument("project_box: infeasible bounds at index " +
                                  std::to_string(i));
    }
    out[i] = std::clamp(v[i], lo[i], hi[i]);
  }
  return out;
}

double nuclear_norm(const DenseMatrix& m) {
  const numkit::SvdResult f = numkit::svd(m);
  double s = 0.0;
  for (double v : f.s) s += v;
  return s;
}

ProxOracle l1_oracle(double weight) {
  if (!(weight >= 0.0)) throw std::invalid_argument("l1_oracle: negative weight");
  ProxOracle o;
  o.eval = [weight](std::span<const double> z, double kappa) {
    if (weight == 0.0) return Vector(z.begin(), z.end());
    return soft_threshold(z, weight * kappa);
  };
  o.objective = [weight](std::span<const double> x) { return weight * numkit::norm1(x); };
  o.project = [](std::span<const double> x) { return Vector(x.begin(), x.end()); };
  return o;
}

ProxOracle quadratic_oracle(DenseMatrix p, Vector c) {
  if (p.rows() != p.cols() || p.rows() != c.size()) {
    throw std::invalid_argument("quadratic_oracle: shape mismatch");
  }
  ProxOracle o;
  o.eval = [p, c](std::span<const double> z, double kappa) {
    require_positive(kappa, "quadratic prox");
    // (P + I/κ) x = z/κ − c
    DenseMatrix lhs = p;
    Vector rhs(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      lhs(i, i) += 1.0 / kappa;
      rhs[i] = z[i] / kappa - c[i];
    }
    return numkit::solve_linear(lhs, rhs);
  };
  o.objective = [p, c](std::span<const double> x) {
    return 0.5 * numkit::dot(x, numkit::matvec(p, x)) + numkit::dot(c, x);
  };
  o.project = [](std::span<const double> x) { return Vector(x.begin(), x.end()); };
  return o;
}

ProxOracle box_oracle(Vector lo, Vector hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("box_oracle: length mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] <= hi[i])) throw std::invalid_argument("box_oracle: infeasible bounds");
  }
  ProxOracle o;
  o.eval = [lo, hi](std::span<const double> z, double) { return project_box(z, lo, hi); };
  o.objective = [lo, hi](std::span<const double> x) {
    constexpr double kTol = 1e-10;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < lo[i] - kTol || x[i] > hi[i] + kTol) {
        return std::numeric_limits<double>::infinity();
      }
    }
    return 0.0;
  };
  o.project = [lo, hi](std::span<const double> x) { return project_box(x, lo, hi); };
  return o;
}

ProxOracle zero_oracle() {
  ProxOracle o;
  o.eval = [](std::span<const double> z, double) { return Vector(z.begin(), z.end()); };
  o.objective = [](std::span<const double>) { return 0.0; };
  o.project = [](std::span<const double> x) { return Vector(x.begin(), x.end()); };
  return o;
}

}  // namespace gippa::prox
