#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "gippa/numkit/dense_matrix.hpp"

namespace gippa::numkit {

/// Deterministic 64-bit generator: xoshiro256** with its 256-bit state
/// expanded from the seed by splitmix64.
///
/// Integer and uniform streams are bit-identical across platforms. Normal
/// deviates use the Box-Muller transform (pairs, second value cached), so
/// they additionally depend on the platform's libm for the last ulp.
///
/// A generator is single-owner. Parallel work derives independent streams
/// with split(), which depends only on the construction seed and the stream
/// name, never on how much of the parent stream was consumed.
class SeededRng {
 public:
  static constexpr std::string_view kAlgorithmId =
      "xoshiro256starstar/splitmix64/box-muller";

  explicit SeededRng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept;
  double uniform(double lo, double hi) noexcept;
  /// Uniform integer on [0, bound), unbiased (Lemire rejection).
  std::uint64_t bounded(std::uint64_t bound) noexcept;
  double normal() noexcept;

  SeededRng split(std::string_view stream_name) const;
  SeededRng split(std::uint64_t stream_id) const;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

DenseMatrix rng_normal(SeededRng& rng, std::size_t rows, std::size_t cols);
Vector rng_uniform(SeededRng& rng, double lo, double hi, std::size_t n);
/// k distinct indices drawn uniformly from [0, population), sorted.
std::vector<std::size_t> sample_without_replacement(SeededRng& rng,
                                                    std::size_t population,
                                                    std::size_t k);

}  // namespace gippa::numkit
