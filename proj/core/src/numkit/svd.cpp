#include "gippa/numkit/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gippa/numkit/linalg.hpp"

namespace gippa::numkit {

namespace {

std::string not_converged_message(double fro, double off, int sweeps) {
  std::ostringstream os;
  os << "svd: Jacobi iteration did not converge after " << sweeps
     << " sweeps (|M|_F = " << fro << ", relative off-diagonal = " << off
     << ")";
  return os.str();
}

// Columns of the working matrix are stored as rows so every column access
// is contiguous.
struct JacobiWork {
  DenseMatrix cols;   // n x r, row j is column j of M·V
  DenseMatrix vcols;  // n x n, row j is column j of V
};

double max_relative_off_diagonal(const DenseMatrix& cols, double skip_sq) {
  const std::size_t n = cols.rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double di = squared_norm(cols.row(i));
    if (di <= skip_sq) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dj = squared_norm(cols.row(j));
      if (dj <= skip_sq) continue;
      worst = std::max(worst,
                       std::abs(dot(cols.row(i), cols.row(j))) / std::sqrt(di * dj));
    }
  }
  return worst;
}

void rotate_rows(std::span<double> a, std::span<double> b, double c, double s) {
  double* pa = a.data();
  double* pb = b.data();
  const std::size_t len = a.size();
  for (std::size_t k = 0; k < len; ++k) {
    const double x = pa[k];
    const double y = pb[k];
    pa[k] = c * x - s * y;
    pb[k] = s * x + c * y;
  }
}

// Gram-Schmidt completion of an orthonormal column set held as rows of `u`
// (rows [0, filled) are valid); fills row `target`.
void complete_basis_row(DenseMatrix& u, const std::vector<std::size_t>& filled,
                        std::size_t target) {
  const std::size_t len = u.cols();
  Vector cand(len);
  Vector best;
  double best_norm = 0.0;
  // Some unit vector keeps at least 1/sqrt(len) of its norm after projection;
  // take the one that keeps the most.
  for (std::size_t e = 0; e < len; ++e) {
    std::fill(cand.begin(), cand.end(), 0.0);
    cand[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t f : filled) {
        const auto uf = u.row(f);
        const double r = dot(uf, cand);
        for (std::size_t k = 0; k < len; ++k) cand[k] -= r * uf[k];
      }
    }
    const double nc = norm2(cand);
    if (nc > best_norm) {
      best_norm = nc;
      best = cand;
    }
    if (nc > 0.5) break;
  }
  if (best_norm < 0.5 / std::sqrt(static_cast<double>(len))) {
    throw std::logic_error("svd: failed to complete orthonormal basis");
  }
  auto ut = u.row(target);
  for (std::size_t k = 0; k < len; ++k) ut[k] = best[k] / best_norm;
}

// Jacobi on a tall matrix (rows >= cols). `v0`, when given, is the starting
// right factor.
SvdResult jacobi_tall(const DenseMatrix& m, const DenseMatrix* v0,
                      const SvdOptions& options) {
  const std::size_t r = m.rows();
  const std::size_t n = m.cols();
  const double fro = m.frobenius_norm();
  const double eps = std::numeric_limits<double>::epsilon();
  const double tol =
      options.pair_tol > 0.0 ? options.pair_tol : 8.0 * static_cast<double>(r) * eps;
  // Columns below this norm are numerical zeros: never rotated, and their
  // left vectors are rebuilt by basis completion.
  const double cutoff = 1e-15 * fro;
  const double skip_sq = cutoff * cutoff;

  JacobiWork w;
  const DenseMatrix mt = m.transpose();
  if (v0 != nullptr) {
    if (v0->rows() != n || v0->cols() != n) {
      throw std::invalid_argument("svd_warm: warm-start factor has wrong shape");
    }
    w.cols = multiply_at_b(*v0, mt);
    w.vcols = v0->transpose();
  } else {
    w.cols = mt;
    w.vcols = DenseMatrix::identity(n);
  }

  Vector d(n);
  int sweep = 0;
  bool converged = (fro == 0.0);
  while (!converged) {
    if (sweep >= options.max_sweeps) {
      throw SvdNotConverged(fro, max_relative_off_diagonal(w.cols, skip_sq), sweep);
    }
    ++sweep;
    for (std::size_t j = 0; j < n; ++j) d[j] = squared_norm(w.cols.row(j));
    std::size_t rotations = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (d[i] <= skip_sq || d[j] <= skip_sq) continue;
        const double g = dot(w.cols.row(i), w.cols.row(j));
        if (std::abs(g) <= tol * std::sqrt(d[i] * d[j])) continue;
        const double zeta = (d[j] - d[i]) / (2.0 * g);
        double t;
        if (std::abs(zeta) > 1e150) {
          t = 0.5 / zeta;
        } else {
          t = std::copysign(1.0, zeta) /
              (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate_rows(w.cols.row(i), w.cols.row(j), c, s);
        rotate_rows(w.vcols.row(i), w.vcols.row(j), c, s);
        d[i] -= t * g;
        d[j] += t * g;
        ++rotations;
      }
    }
    converged = (rotations == 0);
  }

  Vector sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = norm2(w.cols.row(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sv[a] > sv[b]; });

  SvdResult out;
  out.sweeps = sweep;
  out.s.resize(n);
  DenseMatrix ut(n, r);  // rows are left singular vectors
  DenseMatrix vt(n, n);
  std::vector<std::size_t> filled;
  std::vector<std::size_t> deficient;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.s[k] = sv[j];
    std::copy(w.vcols.row(j).begin(), w.vcols.row(j).end(), vt.row(k).begin());
    if (sv[j] > cutoff && sv[j] > 0.0) {
      const auto src = w.cols.row(j);
      auto dst = ut.row(k);
      for (std::size_t i = 0; i < r; ++i) dst[i] = src[i] / sv[j];
      filled.push_back(k);
    } else {
      deficient.push_back(k);
    }
  }
  for (std::size_t k : deficient) {
    complete_basis_row(ut, filled, k);
    filled.push_back(k);
  }
  out.U = ut.transpose();
  out.V = vt.transpose();
  return out;
}

}  // namespace

SvdNotConverged::SvdNotConverged(double frobenius_norm, double off_diagonal,
                                 int sweeps)
    : std::runtime_error(not_converged_message(frobenius_norm, off_diagonal, sweeps)),
      frobenius_norm_(frobenius_norm),
      off_diagonal_(off_diagonal),
      sweeps_(sweeps) {}

SvdResult svd(const DenseMatrix& m, const SvdOptions& options) {
  if (!m.all_finite()) throw std::invalid_argument("svd: non-finite input");
  if (m.rows() >= m.cols()) return jacobi_tall(m, nullptr, options);
  SvdResult t = jacobi_tall(m.transpose(), nullptr, options);
  std::swap(t.U, t.V);
  return t;
}

SvdResult svd_warm(const DenseMatrix& m, const DenseMatrix& v0,
                   const SvdOptions& options) {
  if (!m.all_finite()) throw std::invalid_argument("svd: non-finite input");
  if (m.rows() >= m.cols()) return jacobi_tall(m, &v0, options);
  SvdResult t = jacobi_tall(m.transpose(), &v0, options);
  std::swap(t.U, t.V);
  return t;
}

}  // namespace gippa::numkit
