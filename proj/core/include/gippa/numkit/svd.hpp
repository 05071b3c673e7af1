#pragma once

#include <stdexcept>
#include <string>

#include "gippa/numkit/dense_matrix.hpp"

namespace gippa::numkit {

/// Thin SVD M = U·diag(s)·Vᵀ with k = min(rows, cols):
/// U is rows x k, s has k nonincreasing nonnegative entries, V is cols x k.
struct SvdResult {
  DenseMatrix U;
  Vector s;
  DenseMatrix V;
  int sweeps = 0;
};

struct SvdOptions {
  int max_sweeps = 60;
  /// A column pair is rotated while |⟨a_i, a_j⟩| > pair_tol·‖a_i‖‖a_j‖.
  /// Zero selects 8·rows·eps, the floor at which the dot products of
  /// length `rows` stop being meaningful.
  double pair_tol = 0.0;
};

/// Raised when the Jacobi sweeps hit the cap without orthogonalising.
class SvdNotConverged : public std::runtime_error {
 public:
  SvdNotConverged(double frobenius_norm, double off_diagonal, int sweeps);

  double frobenius_norm() const noexcept { return frobenius_norm_; }
  double off_diagonal() const noexcept { return off_diagonal_; }
  int sweeps() const noexcept { return sweeps_; }

 private:
  double frobenius_norm_;
  double off_diagonal_;
  int sweeps_;
};

/// One-sided (Hestenes) Jacobi SVD.
SvdResult svd(const DenseMatrix& m, const SvdOptions& options = {});

/// Same factorisation, with Jacobi started from m·v0 and V accumulated on
/// top of v0. v0 must be square orthogonal of size m.cols() (when
/// rows >= cols) or m.rows() (otherwise, applied to mᵀ). A good v0, such as
/// the right factor of a nearby matrix, cuts the sweep count sharply.
SvdResult svd_warm(const DenseMatrix& m, const DenseMatrix& v0,
                   const SvdOptions& options = {});

}  // namespace gippa::numkit
