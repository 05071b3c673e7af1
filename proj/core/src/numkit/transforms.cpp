#include "gippa/numkit/transforms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace gippa::numkit {

namespace {

DenseMatrix dct_rows(const DenseMatrix& x, bool inverse) {
  DenseMatrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (inverse) {
      idct2_orthonormal(x.row(i), out.row(i));
    } else {
      dct2_orthonormal(x.row(i), out.row(i));
    }
  }
  return out;
}

DenseMatrix dct_2d(const DenseMatrix& image, bool inverse) {
  // Separable: transform rows, then columns through a transpose.
  const DenseMatrix by_rows = dct_rows(image, inverse);
  return dct_rows(by_rows.transpose(), inverse).transpose();
}

DenseMatrix wht_2d(const DenseMatrix& image) {
  if (!is_power_of_two(image.size())) {
    throw std::invalid_argument(
        "WHT requires rows*cols to be a power of two, got " +
        std::to_string(image.rows()) + "x" + std::to_string(image.cols()));
  }
  DenseMatrix out = image;
  wht_orthonormal_inplace(out.data());
  return out;
}

}  // namespace

std::string_view to_string(TransformKind kind) noexcept {
  switch (kind) {
    case TransformKind::DCT2:
      return "dct2";
    case TransformKind::WHT:
      return "wht";
    case TransformKind::FFT2:
      return "fft2";
  }
  return "unknown";
}

TransformKind parse_transform_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "dct2" || lower == "dct") return TransformKind::DCT2;
  if (lower == "wht") return TransformKind::WHT;
  if (lower == "fft2" || lower == "fft") return TransformKind::FFT2;
  throw std::invalid_argument("unknown transform kind '" + std::string(name) + "'");
}

DenseMatrix orthonormal_transform(TransformKind kind, const DenseMatrix& image,
                                  bool inverse) {
  switch (kind) {
    case TransformKind::DCT2:
      return dct_2d(image, inverse);
    case TransformKind::WHT:
      return wht_2d(image);
    case TransformKind::FFT2:
      break;
  }
  throw std::invalid_argument(
      "orthonormal_transform: FFT2 has complex output; use fft2()");
}

ComplexMatrix fft2(const ComplexMatrix& image, bool inverse) {
  ComplexMatrix out = image;
  std::vector<Complex> column(image.rows);
  for (std::size_t i = 0; i < out.rows; ++i) {
    dft_inplace(std::span<Complex>(out.data.data() + i * out.cols, out.cols), inverse);
  }
  for (std::size_t j = 0; j < out.cols; ++j) {
    for (std::size_t i = 0; i < out.rows; ++i) column[i] = out(i, j);
    dft_inplace(column, inverse);
    for (std::size_t i = 0; i < out.rows; ++i) out(i, j) = column[i];
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(out.rows * out.cols));
  for (Complex& c : out.data) c *= scale;
  return out;
}

ComplexMatrix fft2(const DenseMatrix& image) {
  ComplexMatrix c{image.rows(), image.cols(), {}};
  c.data.assign(image.data().begin(), image.data().end());
  return fft2(c, false);
}

}  // namespace gippa::numkit
