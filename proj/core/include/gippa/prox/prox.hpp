#pragma once

#include <functional>
#include <span>

#include "gippa/numkit/dense_matrix.hpp"
#include "gippa/numkit/svd.hpp"

namespace gippa::prox {

using numkit::DenseMatrix;
using numkit::Vector;

/// Proximal map of a closed convex φ (set constraints folded in):
/// eval(z, κ) = argmin_w φ(w) + ‖w − z‖²/(2κ).
///
/// `project` maps a point into dom φ; it is the identity for finite-valued
/// functions and is used to sample feasible probe points.
struct ProxOracle {
  std::function<Vector(std::span<const double>, double)> eval;
  std::function<double(std::span<const double>)> objective;
  std::function<Vector(std::span<const double>)> project;
};

/// sign(v)·max(|v| − κ, 0) componentwise; |v| = κ maps to 0.
Vector soft_threshold(std::span<const double> v, double kappa);
void soft_threshold_inplace(std::span<double> v, double kappa);

/// Singular value thresholding, the prox of κ‖·‖_*.
DenseMatrix svt(const DenseMatrix& m, double kappa);

struct SvtResult {
  DenseMatrix value;
  Vector singular_values;  // thresholded, nonincreasing
  DenseMatrix right_factor;  // V of the input, reusable as a warm start
  int sweeps = 0;
};

/// svt() that also reports the thresholded spectrum. `warm_v`, when
/// non-null, seeds the Jacobi SVD (see numkit::svd_warm).
SvtResult svt_detailed(const DenseMatrix& m, double kappa,
                       const DenseMatrix* warm_v = nullptr);

/// Componentwise clamp to [lo, hi].
Vector project_box(std::span<const double> v, std::span<const double> lo,
                   std::span<const double> hi);

double nuclear_norm(const DenseMatrix& m);

/// weight·‖x‖₁
ProxOracle l1_oracle(double weight);
/// ½xᵀPx + cᵀx with P symmetric PSD.
ProxOracle quadratic_oracle(DenseMatrix p, Vector c);
/// Indicator of the box [lo, hi].
ProxOracle box_oracle(Vector lo, Vector hi);
/// φ ≡ 0.
ProxOracle zero_oracle();

}  // namespace gippa::prox
