#include "gippa/numkit/dense_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gippa::numkit {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b,
                        const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(
        std::string(what) + ": shape mismatch " + std::to_string(a.rows()) +
        "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
        "x" + std::to_string(b.cols()));
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (!std::isfinite(fill)) {
    throw std::invalid_argument("DenseMatrix: non-finite fill value");
  }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument(
        "DenseMatrix: entries length " + std::to_string(data_.size()) +
        " does not equal rows*cols = " + std::to_string(rows * cols));
  }
  if (!all_finite()) {
    throw std::invalid_argument("DenseMatrix: non-finite entry");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  return diagonal(diag.size(), diag.size(), diag);
}

DenseMatrix DenseMatrix::diagonal(std::size_t rows, std::size_t cols,
                                  std::span<const double> diag) {
  if (diag.size() > std::min(rows, cols)) {
    throw std::invalid_argument("DenseMatrix::diagonal: too many entries");
  }
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (!std::isfinite(diag[i])) {
      throw std::invalid_argument("DenseMatrix::diagonal: non-finite entry");
    }
    m(i, i) = diag[i];
  }
  return m;
}

double& DenseMatrix::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("DenseMatrix::at");
  return (*this)(i, j);
}

double DenseMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("DenseMatrix::at");
  return (*this)(i, j);
}

Vector DenseMatrix::column(std::size_t j) const {
  if (j >= cols_) throw std::out_of_range("DenseMatrix::column");
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  constexpr std::size_t kBlock = 32;
  for (std::size_t ib = 0; ib < rows_; ib += kBlock) {
    for (std::size_t jb = 0; jb < cols_; jb += kBlock) {
      const std::size_t ie = std::min(ib + kBlock, rows_);
      const std::size_t je = std::min(jb + kBlock, cols_);
      for (std::size_t i = ib; i < ie; ++i) {
        for (std::size_t j = jb; j < je; ++j) t(j, i) = (*this)(i, j);
      }
    }
  }
  return t;
}

double DenseMatrix::frobenius_norm() const noexcept {
  // Scaled accumulation keeps huge or tiny entries from over/underflowing.
  double scale = 0.0;
  double ssq = 1.0;
  for (double v : data_) {
    if (v == 0.0) continue;
    const double a = std::abs(v);
    if (scale < a) {
      ssq = 1.0 + ssq * (scale / a) * (scale / a);
      scale = a;
    } else {
      ssq += (a / scale) * (a / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

bool DenseMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& rhs) {
  require_same_shape(*this, rhs, "DenseMatrix::operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& rhs) {
  require_same_shape(*this, rhs, "DenseMatrix::operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

DenseMatrix operator*(double s, DenseMatrix m) {
  m *= s;
  return m;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("multiply: inner dimensions differ");
  }
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  const std::size_t n = b.cols();
  DenseMatrix c(m, n);
  // i-k-j order streams rows of b and c contiguously.
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = c.row(i).data();
    const double* ai = a.row(i).data();
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = ai[p];
      if (aip == 0.0) continue;
      const double* bp = b.row(p).data();
      for (std::size_t j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
  return c;
}

DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("multiply_at_b: row counts differ");
  }
  const std::size_t m = a.cols();
  const std::size_t n = b.cols();
  DenseMatrix c(m, n);
  for (std::size_t p = 0; p < a.rows(); ++p) {
    const double* ap = a.row(p).data();
    const double* bp = b.row(p).data();
    for (std::size_t i = 0; i < m; ++i) {
      const double api = ap[i];
      if (api == 0.0) continue;
      double* ci = c.row(i).data();
      for (std::size_t j = 0; j < n; ++j) ci[j] += api * bp[j];
    }
  }
  return c;
}

DenseMatrix multiply_a_bt(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("multiply_a_bt: column counts differ");
  }
  const std::size_t m = a.rows();
  const std::size_t n = b.rows();
  const std::size_t k = a.cols();
  DenseMatrix c(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = a.row(i).data();
    for (std::size_t j = 0; j < n; ++j) {
      const double* bj = b.row(j).data();
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += ai[p] * bj[p];
      c(i, j) = s;
    }
  }
  return c;
}

double inner(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "inner");
  double s = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += da[i] * db[i];
  return s;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    m = std::max(m, std::abs(da[i] - db[i]));
  }
  return m;
}

double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "frobenius_distance");
  double s = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = da[i] - db[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace gippa::numkit
