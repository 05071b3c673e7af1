#include "gippa/numkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gippa/numkit/rng.hpp"

namespace gippa::numkit {

namespace {

void require_same_length(std::span<const double> a, std::span<const double> b,
                         const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": length mismatch");
  }
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(squared_norm(a)); }

double norm1(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

Vector add(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "add");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "subtract");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scaled(std::span<const double> a, double s) {
  Vector r(a.begin(), a.end());
  for (double& v : r) v *= s;
  return r;
}

void axpy(double s, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

Vector matvec(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: shape mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector matvec_transpose(const DenseMatrix& a, std::span<const double> x) {
  if (a.rows() != x.size()) {
    throw std::invalid_argument("matvec_transpose: shape mismatch");
  }
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) y[j] += r[j] * x[i];
  }
  return y;
}

Vector solve_linear(const DenseMatrix& a, std::span<const double> rhs) {
  const std::size_t n = a.rows();
  if (a.cols() != n || rhs.size() != n) {
    throw std::invalid_argument("solve_linear: expected square system");
  }
  DenseMatrix lu = a;
  Vector x(rhs.begin(), rhs.end());
  double scale = 0.0;
  for (double v : a.data()) scale = std::max(scale, std::abs(v));
  const double pivot_floor = 1e-14 * std::max(scale, 1e-300);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    }
    if (std::abs(lu(piv, k)) <= pivot_floor) {
      throw std::runtime_error("solve_linear: matrix is numerically singular");
    }
    if (piv != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(piv).begin());
      std::swap(x[k], x[piv]);
    }
    const double d = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / d;
      if (f == 0.0) continue;
      lu(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      x[i] -= f * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = x[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= lu(k, j) * x[j];
    x[k] = s / lu(k, k);
  }
  return x;
}

Vector symmetric_eigenvalues(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) {
    throw std::invalid_argument("symmetric_eigenvalues: expected square matrix");
  }
  DenseMatrix w = a;
  const double fro = std::max(a.frobenius_norm(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += w(i, j) * w(i, j);
    }
    if (std::sqrt(off) <= 1e-15 * fro) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = w(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (w(q, q) - w(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double wkp = w(k, p);
          const double wkq = w(k, q);
          w(k, p) = c * wkp - s * wkq;
          w(k, q) = s * wkp + c * wkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double wpk = w(p, k);
          const double wqk = w(q, k);
          w(p, k) = c * wpk - s * wqk;
          w(q, k) = s * wpk + c * wqk;
        }
      }
    }
  }
  Vector ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = w(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double power_iteration(
    std::size_t dim,
    const std::function<Vector(std::span<const double>)>& apply_psd,
    SeededRng& rng, std::size_t max_iter, double tol) {
  Vector v = rng_uniform(rng, -1.0, 1.0, dim);
  double nv = norm2(v);
  if (nv == 0.0) return 0.0;
  for (double& x : v) x /= nv;
  double lambda = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    Vector w = apply_psd(v);
    const double next = dot(v, w);
    const double nw = norm2(w);
    if (nw == 0.0) return 0.0;
    for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / nw;
    if (std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
      return next;
    }
    lambda = next;
  }
  return lambda;
}

DenseMatrix random_orthogonal(std::size_t n, SeededRng& rng) {
  DenseMatrix g = rng_normal(rng, n, n);
  // Modified Gram-Schmidt on columns, applied twice for orthogonality to
  // working precision.
  DenseMatrix q = g.transpose();  // rows are the columns being orthogonalised
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < n; ++j) {
      auto qj = q.row(j);
      for (std::size_t i = 0; i < j; ++i) {
        const auto qi = q.row(i);
        const double r = dot(qi, qj);
        for (std::size_t k = 0; k < n; ++k) qj[k] -= r * qi[k];
      }
      const double nj = norm2(qj);
      for (double& v : qj) v /= nj;
    }
  }
  return q.transpose();
}

}  // namespace gippa::numkit
