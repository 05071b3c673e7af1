#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gippa::bench {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct QpCheckOptions {
  std::size_t fixtures = 20;
  std::size_t dim = 8;  // n1 = n2 = m
  std::uint64_t seed = 2024;
};

/// Every linearized ADMM step satisfies its VI inequality at random probes.
CheckResult check_ladmm_step_inequality(const QpCheckOptions& opt = {}, std::size_t steps = 100,
                                        std::size_t probes = 100);

/// φ_{k+1} ≤ φ_k − ‖w^{k+1} − w^k‖²_G + 1e−10 with w* from the KKT system.
CheckResult check_contraction(const QpCheckOptions& opt = {}, std::size_t iters = 500);

/// G-norm differences nonincreasing, k‖Δw^k‖²_G ≤ φ₀ + 1e−8, and the value
/// at the last iteration below the one at `early`.
CheckResult check_nonergodic_rate(const QpCheckOptions& opt = {}, std::size_t iters = 500,
                                  std::size_t early = 50);

/// Saddle gap of the averaged iterate at the given k.
CheckResult check_ergodic_bound(const QpCheckOptions& opt = {},
                                std::vector<std::size_t> ks = {50, 100, 200},
                                std::size_t probes = 50);

/// Best step residual of the inertial PPA with α ≡ alpha against
/// (1 + 2/(1 − 3α))·φ₀/k on strongly monotone affine VIs.
CheckResult check_inertial_rate(std::size_t fixtures = 10, std::size_t dim = 10,
                                double alpha = 0.28, std::size_t iters = 500,
                                std::uint64_t seed = 7);

/// k²(f(w^k) − f*) ≤ 4‖w⁰ − c‖² for f = ½‖w − c‖², λ ≡ 1.
CheckResult check_nesterov_rate(std::size_t trials = 10, std::size_t dim = 10,
                                std::size_t iters = 500, std::uint64_t seed = 11);

/// α ≡ 0 inertial trajectories equal the plain ones to 1e−14 (QP and CPCP).
CheckResult check_zero_alpha_identity(std::uint64_t seed = 3);
/// 𝒜𝒜* = I to 1e−12 for WHT and DCT2 measurement operators.
CheckResult check_measurement_identity(std::uint64_t seed = 5);
/// svt spectra equal soft-thresholded singular values to 1e−10.
CheckResult check_svt_spectrum(std::uint64_t seed = 9);

/// Runs `fn`, timing it and turning exceptions into failures.
CheckResult timed_check(const std::string& name, const std::function<CheckResult()>& fn);

/// The small-fixture invariant suite behind `gippa verify`.
std::vector<CheckResult> run_verify_suite(std::uint64_t seed = 0);

}  // namespace gippa::bench
