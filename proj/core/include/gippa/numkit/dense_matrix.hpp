#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gippa::numkit {

using Vector = std::vector<double>;

/// Row-major dense matrix of finite doubles.
///
/// Construction from an entry vector validates the shape and rejects
/// non-finite values. Element access is unchecked; use at() when bounds
/// matter.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> diag);
  /// m x n matrix with diag on the leading diagonal.
  static DenseMatrix diagonal(std::size_t rows, std::size_t cols,
                              std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  double& at(std::size_t i, std::size_t j);
  double at(std::size_t i, std::size_t j) const;

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> row(std::size_t i) noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  Vector column(std::size_t j) const;

  DenseMatrix transpose() const;
  double frobenius_norm() const noexcept;
  bool all_finite() const noexcept;
  bool same_shape(const DenseMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  DenseMatrix& operator+=(const DenseMatrix& rhs);
  DenseMatrix& operator-=(const DenseMatrix& rhs);
  DenseMatrix& operator*=(double s) noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator*(double s, DenseMatrix m);

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
/// aᵀ·b without forming the transpose.
DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b);
/// a·bᵀ without forming the transpose.
DenseMatrix multiply_a_bt(const DenseMatrix& a, const DenseMatrix& b);

/// Frobenius inner product.
double inner(const DenseMatrix& a, const DenseMatrix& b);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
/// ‖a − b‖_F
double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace gippa::numkit
