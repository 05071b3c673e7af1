#include "gippa/numkit/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gippa/numkit/rng.hpp"

namespace gippa::numkit {

namespace {

std::size_t conjugate_index(std::size_t k, std::size_t rows, std::size_t cols) {
  const std::size_t k1 = k / cols;
  const std::size_t k2 = k % cols;
  return ((rows - k1) % rows) * cols + (cols - k2) % cols;
}

std::vector<std::size_t> half_spectrum(std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> out;
  out.reserve(rows * cols / 2);
  for (std::size_t k = 0; k < rows * cols; ++k) {
    if (k < conjugate_index(k, rows, cols)) out.push_back(k);
  }
  return out;
}

}  // namespace

MeasurementOp::MeasurementOp(TransformKind kind, std::size_t image_rows,
                             std::size_t image_cols,
                             std::vector<std::size_t> selected)
    : kind_(kind), rows_(image_rows), cols_(image_cols), selected_(std::move(selected)) {
  if (rows_ == 0 || cols_ == 0) {
    throw std::invalid_argument("MeasurementOp: empty image shape");
  }
  if (kind_ == TransformKind::WHT && !is_power_of_two(rows_ * cols_)) {
    throw std::invalid_argument("MeasurementOp: WHT needs rows*cols a power of two");
  }
  if (selected_.size() > max_selectable(kind_, rows_, cols_)) {
    throw std::invalid_argument("MeasurementOp: more indices than coefficients");
  }
  for (std::size_t i = 0; i < selected_.size(); ++i) {
    if (selected_[i] >= rows_ * cols_) {
      throw std::invalid_argument("MeasurementOp: index out of range");
    }
    if (i > 0 && selected_[i] <= selected_[i - 1]) {
      throw std::invalid_argument("MeasurementOp: indices must be sorted and distinct");
    }
    if (complex_mode() &&
        !(selected_[i] < conjugate_index(selected_[i], rows_, cols_))) {
      throw std::invalid_argument(
          "MeasurementOp: FFT2 index outside the half spectrum");
    }
  }
}

std::size_t MeasurementOp::max_selectable(TransformKind kind, std::size_t rows,
                                          std::size_t cols) {
  if (kind != TransformKind::FFT2) return rows * cols;
  return half_spectrum(rows, cols).size();
}

Vector MeasurementOp::apply(const DenseMatrix& x) const {
  if (x.rows() != rows_ || x.cols() != cols_) {
    throw std::invalid_argument("MeasurementOp::apply: image shape mismatch");
  }
  const std::size_t q = selected_.size();
  if (complex_mode()) {
    const ComplexMatrix c = fft2(x);
    Vector b(2 * q);
    for (std::size_t i = 0; i < q; ++i) {
      const Complex v = c.data[selected_[i]];
      b[i] = std::numbers::sqrt2 * v.real();
      b[q + i] = std::numbers::sqrt2 * v.imag();
    }
    return b;
  }
  const DenseMatrix t = orthonormal_transform(kind_, x, false);
  const auto coeffs = t.data();
  Vector b(q);
  for (std::size_t i = 0; i < q; ++i) b[i] = coeffs[selected_[i]];
  return b;
}

DenseMatrix MeasurementOp::adjoint(std::span<const double> b) const {
  if (b.size() != measurement_dim()) {
    throw std::invalid_argument("MeasurementOp::adjoint: measurement length mismatch");
  }
  const std::size_t q = selected_.size();
  if (complex_mode()) {
    ComplexMatrix z{rows_, cols_, std::vector<Complex>(rows_ * cols_)};
    for (std::size_t i = 0; i < q; ++i) z.data[selected_[i]] = {b[i], b[q + i]};
    const ComplexMatrix x = fft2(z, true);
    DenseMatrix out(rows_, cols_);
    auto d = out.data();
    for (std::size_t k = 0; k < d.size(); ++k) {
      d[k] = std::numbers::sqrt2 * x.data[k].real();
    }
    return out;
  }
  DenseMatrix filled(rows_, cols_);
  auto d = filled.data();
  for (std::size_t i = 0; i < q; ++i) d[selected_[i]] = b[i];
  return orthonormal_transform(kind_, filled, true);
}

MeasurementOp make_measurement_op(TransformKind kind, std::size_t image_rows,
                                  std::size_t image_cols, std::size_t q,
                                  SeededRng& rng) {
  const std::size_t limit = MeasurementOp::max_selectable(kind, image_rows, image_cols);
  if (q < 1 || q > limit) {
    throw std::invalid_argument("make_measurement_op: q = " + std::to_string(q) +
                                " outside [1, " + std::to_string(limit) + "]");
  }
  if (kind != TransformKind::FFT2) {
    return MeasurementOp(kind, image_rows, image_cols,
                         sample_without_replacement(rng, image_rows * image_cols, q));
  }
  const std::vector<std::size_t> pool = half_spectrum(image_rows, image_cols);
  const std::vector<std::size_t> pick = sample_without_replacement(rng, pool.size(), q);
  std::vector<std::size_t> selected(q);
  for (std::size_t i = 0; i < q; ++i) selected[i] = pool[pick[i]];
  return MeasurementOp(kind, image_rows, image_cols, std::move(selected));
}

}  // namespace gippa::numkit
