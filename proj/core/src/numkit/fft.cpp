#include "gippa/numkit/fft.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gippa::numkit {

namespace {

struct Plan {
  std::vector<Complex> twiddle;      // e^{-2πik/N}, k < N/2
  std::vector<std::size_t> reversal;  // bit-reversal permutation
  std::vector<Complex> dct_shift;    // e^{-iπk/(2N)}, k < N
};

const Plan& plan_for(std::size_t n) {
  thread_local std::map<std::size_t, Plan> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Plan p;
  p.twiddle.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double a = -2.0 * std::numbers::pi * static_cast<double>(k) /
                     static_cast<double>(n);
    p.twiddle[k] = {std::cos(a), std::sin(a)};
  }
  p.reversal.resize(n);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    p.reversal[i] = r;
  }
  p.dct_shift.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = -std::numbers::pi * static_cast<double>(k) /
                     (2.0 * static_cast<double>(n));
    p.dct_shift[k] = {std::cos(a), std::sin(a)};
  }
  return cache.emplace(n, std::move(p)).first->second;
}

void radix2(std::span<Complex> a, bool inverse) {
  const std::size_t n = a.size();
  const Plan& plan = plan_for(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = plan.reversal[i];
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        Complex w = plan.twiddle[k * stride];
        if (inverse) w = std::conj(w);
        const Complex u = a[start + k];
        const Complex v = a[start + k + half] * w;
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
}

void direct_dft(std::span<Complex> a, bool inverse) {
  const std::size_t n = a.size();
  std::vector<Complex> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * std::numbers::pi *
                         static_cast<double>((j * k) % n) / static_cast<double>(n);
      s += a[j] * Complex{std::cos(ang), std::sin(ang)};
    }
    out[k] = s;
  }
  std::copy(out.begin(), out.end(), a.begin());
}

double dct_scale(std::size_t k, std::size_t n) {
  return k == 0 ? std::sqrt(1.0 / static_cast<double>(n))
                : std::sqrt(2.0 / static_cast<double>(n));
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

void dft_inplace(std::span<Complex> data, bool inverse) {
  if (data.size() <= 1) return;
  if (is_power_of_two(data.size())) {
    radix2(data, inverse);
  } else {
    direct_dft(data, inverse);
  }
}

void dct2_orthonormal(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size();
  if (out.size() != n) throw std::invalid_argument("dct2: length mismatch");
  if (n == 0) return;
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  if (!is_power_of_two(n)) {
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        s += in[j] * std::cos(std::numbers::pi * static_cast<double>((2 * j + 1) * k) /
                              (2.0 * static_cast<double>(n)));
      }
      out[k] = dct_scale(k, n) * s;
    }
    return;
  }
  // Makhoul: even samples ascending, odd samples descending, then one FFT.
  std::vector<Complex> v(n);
  for (std::size_t j = 0; j < n / 2; ++j) {
    v[j] = in[2 * j];
    v[n - 1 - j] = in[2 * j + 1];
  }
  radix2(v, false);
  const Plan& plan = plan_for(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = dct_scale(k, n) * (plan.dct_shift[k] * v[k]).real();
  }
}

void idct2_orthonormal(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size();
  if (out.size() != n) throw std::invalid_argument("idct2: length mismatch");
  if (n == 0) return;
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  if (!is_power_of_two(n)) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        s += dct_scale(k, n) * in[k] *
             std::cos(std::numbers::pi * static_cast<double>((2 * j + 1) * k) /
                      (2.0 * static_cast<double>(n)));
      }
      out[j] = s;
    }
    return;
  }
  // Undo the scaling, rebuild the Makhoul spectrum V_k = conj(w_k)(C_k − iC_{N−k}),
  // inverse FFT, then de-interleave.
  const Plan& plan = plan_for(n);
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ck = in[k] / dct_scale(k, n);
    const double cnk = k == 0 ? 0.0 : in[n - k] / dct_scale(n - k, n);
    v[k] = std::conj(plan.dct_shift[k]) * Complex{ck, -cnk};
  }
  radix2(v, true);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n / 2; ++j) {
    out[2 * j] = v[j].real() * inv_n;
    out[2 * j + 1] = v[n - 1 - j].real() * inv_n;
  }
}

void wht_orthonormal_inplace(std::span<double> data) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("WHT requires a power-of-two length, got " +
                                std::to_string(n));
  }
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t start = 0; start < n; start += 2 * len) {
      for (std::size_t k = start; k < start + len; ++k) {
        const double a = data[k];
        const double b = data[k + len];
        data[k] = a + b;
        data[k + len] = a - b;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (double& v : data) v *= scale;
}

}  // namespace gippa::numkit
