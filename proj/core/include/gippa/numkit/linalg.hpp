#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "gippa/numkit/dense_matrix.hpp"

namespace gippa::numkit {

class SeededRng;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double squared_norm(std::span<const double> a);
double norm1(std::span<const double> a);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

Vector add(std::span<const double> a, std::span<const double> b);
Vector subtract(std::span<const double> a, std::span<const double> b);
Vector scaled(std::span<const double> a, double s);
/// y += s * x
void axpy(double s, std::span<const double> x, std::span<double> y);

Vector matvec(const DenseMatrix& a, std::span<const double> x);
/// aᵀ·x
Vector matvec_transpose(const DenseMatrix& a, std::span<const double> x);

/// Solves a·x = rhs by LU with partial pivoting. Throws std::runtime_error
/// when a pivot vanishes relative to the matrix scale.
Vector solve_linear(const DenseMatrix& a, std::span<const double> rhs);

/// Eigenvalues of a symmetric matrix, ascending (cyclic Jacobi).
Vector symmetric_eigenvalues(const DenseMatrix& a);

/// Largest eigenvalue of a self-adjoint PSD operator by power iteration.
double power_iteration(
    std::size_t dim,
    const std::function<Vector(std::span<const double>)>& apply_psd,
    SeededRng& rng, std::size_t max_iter = 500, double tol = 1e-10);

/// Random orthogonal matrix (QR of a Gaussian matrix via Gram-Schmidt).
DenseMatrix random_orthogonal(std::size_t n, SeededRng& rng);

}  // namespace gippa::numkit
