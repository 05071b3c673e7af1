#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gippa/numkit/dense_matrix.hpp"
#include "gippa/numkit/transforms.hpp"

namespace gippa::numkit {

class SeededRng;

/// Partial orthonormal measurement operator 𝒜: ℝ^{m×n} → ℝ^d.
///
/// apply() transforms the image and keeps the selected coefficients;
/// adjoint() zero-fills and inverse-transforms. Rows of 𝒜 are rows of an
/// orthonormal transform, so 𝒜𝒜* = I.
///
/// FFT2 keeps real measurements: each selected frequency k contributes
/// √2·Re ĉ_k and √2·Im ĉ_k (d = 2q). Frequencies are drawn from one half of
/// the spectrum (k < conj(k), self-conjugate frequencies excluded) so the
/// real rows stay orthonormal.
class MeasurementOp {
 public:
  MeasurementOp(TransformKind kind, std::size_t image_rows,
                std::size_t image_cols, std::vector<std::size_t> selected);

  TransformKind kind() const noexcept { return kind_; }
  std::size_t image_rows() const noexcept { return rows_; }
  std::size_t image_cols() const noexcept { return cols_; }
  /// Number of selected coefficients q.
  std::size_t num_selected() const noexcept { return selected_.size(); }
  /// Length of a measurement vector (q, or 2q for FFT2).
  std::size_t measurement_dim() const noexcept {
    return complex_mode() ? 2 * selected_.size() : selected_.size();
  }
  bool complex_mode() const noexcept { return kind_ == TransformKind::FFT2; }
  std::span<const std::size_t> selected_indices() const noexcept { return selected_; }

  Vector apply(const DenseMatrix& x) const;
  DenseMatrix adjoint(std::span<const double> b) const;

  /// Number of coefficients eligible for selection: rows·cols, or the
  /// half-spectrum size for FFT2.
  static std::size_t max_selectable(TransformKind kind, std::size_t rows,
                                    std::size_t cols);

 private:
  TransformKind kind_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::size_t> selected_;
};

/// Draws q coefficients uniformly without replacement.
MeasurementOp make_measurement_op(TransformKind kind, std::size_t image_rows,
                                  std::size_t image_cols, std::size_t q,
                                  SeededRng& rng);

}  // namespace gippa::numkit
