#include "gippa/vi/weight_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gippa/numkit/linalg.hpp"

namespace gippa::vi {

WeightOperator::WeightOperator(std::size_t dim, ApplyFn apply, QuadFn quad,
                               bool declared_psd)
    : dim_(dim), apply_(std::move(apply)), quad_(std::move(quad)), psd_(declared_psd) {
  if (!apply_) throw std::invalid_argument("WeightOperator: apply oracle is required");
}

WeightOperator WeightOperator::identity(std::size_t n) { return scaled_identity(n, 1.0); }

WeightOperator WeightOperator::scaled_identity(std::size_t n, double c) {
  return WeightOperator(
      n, [c](std::span<const double> v) { return numkit::scaled(v, c); },
      [c](std::span<const double> v) { return c * numkit::squared_norm(v); }, c >= 0.0);
}

WeightOperator WeightOperator::zero(std::size_t n) {
  return WeightOperator(
      n, [n](std::span<const double>) { return Vector(n, 0.0); },
      [](std::span<const double>) { return 0.0; }, true);
}

WeightOperator WeightOperator::from_matrix(DenseMatrix g) {
  if (g.rows() != g.cols()) {
    throw std::invalid_argument("WeightOperator::from_matrix: matrix not square");
  }
  const double scale = std::max(1.0, g.frobenius_norm());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = i + 1; j < g.cols(); ++j) {
      if (std::abs(g(i, j) - g(j, i)) > 1e-12 * scale) {
        throw std::invalid_argument("WeightOperator::from_matrix: matrix not symmetric");
      }
    }
  }
  const std::size_t n = g.rows();
  const bool psd = numkit::symmetric_eigenvalues(g).front() >= -1e-12 * scale;
  return WeightOperator(
      n, [g](std::span<const double> v) { return numkit::matvec(g, v); }, {}, psd);
}

Vector WeightOperator::apply(std::span<const double> v) const {
  if (v.size() != dim_) throw std::invalid_argument("WeightOperator::apply: dimension mismatch");
  return apply_(v);
}

double WeightOperator::quad(std::span<const double> v) const {
  if (v.size() != dim_) throw std::invalid_argument("WeightOperator::quad: dimension mismatch");
  if (quad_) return quad_(v);
  return numkit::dot(v, apply_(v));
}

double WeightOperator::quad_diff(std::span<const double> a,
                                 std::span<const double> b) const {
  return quad(numkit::subtract(a, b));
}

double WeightOperator::inner(std::span<const double> a, std::span<const double> b) const {
  return numkit::dot(a, apply(b));
}

DenseMatrix WeightOperator::materialize() const {
  DenseMatrix g(dim_, dim_);
  Vector e(dim_, 0.0);
  for (std::size_t j = 0; j < dim_; ++j) {
    e[j] = 1.0;
    const Vector col = apply_(e);
    for (std::size_t i = 0; i < dim_; ++i) g(i, j) = col[i];
    e[j] = 0.0;
  }
  return g;
}

}  // namespace gippa::vi
