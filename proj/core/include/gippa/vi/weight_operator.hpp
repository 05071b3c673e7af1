#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "gippa/numkit/dense_matrix.hpp"

namespace gippa::vi {

using numkit::DenseMatrix;
using numkit::Vector;

/// A symmetric weighting operator G, used through Gv and ‖v‖²_G = vᵀGv.
/// It is never required to exist as a matrix; materialize() builds one
/// column at a time for small-dimension checks.
class WeightOperator {
 public:
  using ApplyFn = std::function<Vector(std::span<const double>)>;
  using QuadFn = std::function<double(std::span<const double>)>;

  /// When `quad` is empty, ‖v‖²_G is evaluated as ⟨v, apply(v)⟩.
  WeightOperator(std::size_t dim, ApplyFn apply, QuadFn quad = {},
                 bool declared_psd = true);

  static WeightOperator identity(std::size_t n);
  static WeightOperator scaled_identity(std::size_t n, double c);
  static WeightOperator zero(std::size_t n);
  /// Dense symmetric G. Throws if g is not square and symmetric to 1e-12.
  static WeightOperator from_matrix(DenseMatrix g);

  std::size_t dim() const noexcept { return dim_; }
  bool declared_psd() const noexcept { return psd_; }

  Vector apply(std::span<const double> v) const;
  double quad(std::span<const double> v) const;
  /// ‖a − b‖²_G
  double quad_diff(std::span<const double> a, std::span<const double> b) const;
  double inner(std::span<const double> a, std::span<const double> b) const;

  DenseMatrix materialize() const;

 private:
  std::size_t dim_;
  ApplyFn apply_;
  QuadFn quad_;
  bool psd_;
};

}  // namespace gippa::vi
