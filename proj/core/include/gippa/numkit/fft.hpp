#pragma once

#include <complex>
#include <span>

namespace gippa::numkit {

using Complex = std::complex<double>;

bool is_power_of_two(std::size_t n) noexcept;

/// Unnormalised DFT in place: X_k = Σ x_j e^{∓2πi jk/N} (minus sign when
/// forward). Radix-2 for power-of-two lengths, direct O(N²) otherwise.
void dft_inplace(std::span<Complex> data, bool inverse);

/// Orthonormal DCT-II of a real sequence.
void dct2_orthonormal(std::span<const double> in, std::span<double> out);
/// Inverse of dct2_orthonormal (orthonormal DCT-III).
void idct2_orthonormal(std::span<const double> in, std::span<double> out);

/// Orthonormal Walsh-Hadamard transform in natural (Hadamard) order.
/// Self-inverse. Length must be a power of two.
void wht_orthonormal_inplace(std::span<double> data);

}  // namespace gippa::numkit
