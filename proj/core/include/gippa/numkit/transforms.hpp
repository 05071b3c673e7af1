#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gippa/numkit/dense_matrix.hpp"
#include "gippa/numkit/fft.hpp"

namespace gippa::numkit {

enum class TransformKind { DCT2, WHT, FFT2 };

std::string_view to_string(TransformKind kind) noexcept;
/// Accepts "dct2", "wht", "fft2" (case-insensitive).
TransformKind parse_transform_kind(std::string_view name);

struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> data;  // row-major

  Complex& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Orthonormal real transform of an image.
///
/// DCT2: orthonormal DCT-II along each row, then along each column.
/// WHT: the image is vectorised row-major to length rows·cols (which must be
/// a power of two) and a fast orthonormal WHT is applied; the result keeps
/// the image shape.
/// FFT2 has complex output and is served by fft2().
DenseMatrix orthonormal_transform(TransformKind kind, const DenseMatrix& image,
                                  bool inverse);

/// Orthonormal 2-D DFT (scaled by 1/√(rows·cols)).
ComplexMatrix fft2(const ComplexMatrix& image, bool inverse);
ComplexMatrix fft2(const DenseMatrix& image);

}  // namespace gippa::numkit
