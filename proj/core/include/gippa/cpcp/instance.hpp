#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gippa/numkit/dense_matrix.hpp"
#include "gippa/numkit/measurement.hpp"
#include "gippa/numkit/transforms.hpp"

namespace gippa::cpcp {

using numkit::DenseMatrix;
using numkit::MeasurementOp;
using numkit::TransformKind;
using numkit::Vector;

/// Everything needed to regenerate an instance. For FFT2, q counts complex
/// samples and the measurement vector has length 2q.
struct InstanceSpec {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t nnz = 0;
  TransformKind kind = TransformKind::DCT2;
  std::size_t q = 0;
  std::uint64_t seed = 0;
};

/// min ‖L‖_* + λ‖S‖₁  s.t.  𝒜(L + S) = b, with known ground truth (L0, S0).
struct CpcpInstance {
  InstanceSpec spec;
  DenseMatrix L0;
  DenseMatrix S0;
  std::vector<std::size_t> support;  // row-major indices of S0's nonzeros
  MeasurementOp meas;
  Vector b;
  double lambda = 0.0;
  std::size_t dof = 0;
};

/// (m + n − r)r + nnz
std::size_t degrees_of_freedom(std::size_t m, std::size_t n, std::size_t r, std::size_t nnz);

/// L0 = N₁N₂ with standard normal N₁ (m×r) and N₂ (r×n); S0 has `nnz`
/// entries on a uniformly random support with values uniform in [−10, 10];
/// 𝒜 keeps q uniformly chosen coefficients; b = 𝒜(L0 + S0); λ = 1/√m.
/// Each ingredient draws from its own named stream split from `seed`.
CpcpInstance generate_instance(const InstanceSpec& spec);

/// Structured-text dump of the spec plus the sampled support and measurement
/// indices. Values are not stored; they are re-derived from the seed.
std::string instance_to_json(const CpcpInstance& inst);

/// Regenerates an instance from instance_to_json() output and checks that
/// the stored index sets match the regenerated ones.
CpcpInstance instance_from_json(const std::string& text);

}  // namespace gippa::cpcp
