#include "gippa/bench/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gippa/cpcp/instance.hpp"
#include "gippa/cpcp/solver.hpp"
#include "gippa/numkit/linalg.hpp"
#include "gippa/numkit/measurement.hpp"
#include "gippa/numkit/rng.hpp"
#include "gippa/numkit/svd.hpp"
#include "gippa/prox/prox.hpp"
#include "gippa/splitting/diagnostics.hpp"
#include "gippa/splitting/fixtures.hpp"
#include "gippa/splitting/steps.hpp"
#include "gippa/vi/diagnostics.hpp"
#include "gippa/vi/engine.hpp"
#include "gippa/vi/fixtures.hpp"
#include "gippa/vi/nesterov.hpp"

namespace gippa::bench {

namespace {

using numkit::SeededRng;
using numkit::Vector;

std::string fmt(const char* spec, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, spec, a, b, c);
  return buf;
}

splitting::QpFixture qp_fixture(const QpCheckOptions& opt, std::size_t i) {
  SeededRng rng = SeededRng(opt.seed).split("qp").split(static_cast<std::uint64_t>(i));
  return splitting::make_qp_fixture(opt.dim, opt.dim, opt.dim, rng);
}

// Fixed iteration count: tol 0 never triggers.
vi::SolverTrace long_run(const splitting::QpFixture& fx, std::size_t iters) {
  splitting::LadmmRunOptions ro;
  ro.w_star = fx.kkt.flatten();
  return splitting::run_ladmm(fx.problem, fx.params,
                              splitting::PrimalDualPoint::zeros(fx.problem),
                              vi::StopRule{0.0, iters}, ro);
}

}  // namespace

CheckResult timed_check(const std::string& name, const std::function<CheckResult()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

CheckResult check_ladmm_step_inequality(const QpCheckOptions& opt, std::size_t steps,
                                        std::size_t probes) {
  double worst = INFINITY;
  for (std::size_t i = 0; i < opt.fixtures; ++i) {
    auto fx = qp_fixture(opt, i);
    SeededRng rng = SeededRng(opt.seed).split("probes").split(static_cast<std::uint64_t>(i));
    auto w = splitting::PrimalDualPoint::zeros(fx.problem);
    for (std::size_t k = 0; k < steps; ++k) {
      auto next = splitting::ladmm_step(fx.problem, fx.params, w);
      auto pr = splitting::sample_probes_multiscale(fx.problem, next, probes, rng);
      worst = std::min(worst, splitting::vi_residual_check(fx.problem, fx.params, w, next, pr));
      w = std::move(next);
    }
  }
  CheckResult r;
  r.passed = worst >= -1e-8;
  r.detail = fmt("min slack %.3e over %g fixtures", worst, static_cast<double>(opt.fixtures));
  return r;
}

CheckResult check_contraction(const QpCheckOptions& opt, std::size_t iters) {
  CheckResult r;
  r.passed = true;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < opt.fixtures; ++i) {
    auto fx = qp_fixture(opt, i);
    const auto trace = long_run(fx, iters);
    const auto g = splitting::g_ladmm(fx.problem, fx.params);
    const auto rep = splitting::nonergodic_report(trace, g, fx.kkt.flatten());
    if (!rep.contraction_holds || trace.iterations != iters) {
      ++bad;
      r.passed = false;
    }
  }
  r.detail = fmt("%g of %g fixtures violate over %g iterations", static_cast<double>(bad),
                 static_cast<double>(opt.fixtures), static_cast<double>(iters));
  return r;
}

CheckResult check_nonergodic_rate(const QpCheckOptions& opt, std::size_t iters,
                                  std::size_t early) {
  CheckResult r;
  r.passed = true;
  std::size_t bad = 0;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < opt.fixtures; ++i) {
    auto fx = qp_fixture(opt, i);
    const auto trace = long_run(fx, iters);
    const auto g = splitting::g_ladmm(fx.problem, fx.params);
    const auto rep = splitting::nonergodic_report(trace, g, fx.kkt.flatten());
    bool ok = rep.monotone && rep.rate_holds && rep.k_times_sq.size() == iters;
    if (ok && early >= 1 && early < iters) {
      const double late = rep.k_times_sq[iters - 1];
      const double at_early = rep.k_times_sq[early - 1];
      ok = late < at_early;
      worst_ratio = std::max(worst_ratio, at_early > 0 ? late / at_early : 0.0);
    }
    if (!ok) {
      ++bad;
      r.passed = false;
    }
  }
  r.detail = fmt("%g failing fixtures; worst late/early k*|dw|^2 ratio %.3e",
                 static_cast<double>(bad), worst_ratio);
  return r;
}

CheckResult check_ergodic_bound(const QpCheckOptions& opt, std::vector<std::size_t> ks,
                                std::size_t probes) {
  CheckResult r;
  r.passed = true;
  double worst = -INFINITY;
  const std::size_t iters = ks.empty() ? 0 : *std::max_element(ks.begin(), ks.end());
  for (std::size_t i = 0; i < opt.fixtures; ++i) {
    auto fx = qp_fixture(opt, i);
    const auto trace = long_run(fx, iters + 1);
    const auto g = splitting::g_ladmm(fx.problem, fx.params);
    SeededRng rng = SeededRng(opt.seed).split("ergodic").split(static_cast<std::uint64_t>(i));
    const auto rep = splitting::ergodic_report(trace, fx.problem, g, ks, probes, rng);
    for (const auto& c : rep.checks) worst = std::max(worst, c.worst_excess);
    if (!rep.holds) r.passed = false;
  }
  r.detail = fmt("worst gap minus bound %.3e", worst);
  return r;
}

CheckResult check_inertial_rate(std::size_t fixtures, std::size_t dim, double alpha,
                                std::size_t iters, std::uint64_t seed) {
  CheckResult r;
  r.passed = true;
  double worst = 0.0;
  double constant = 0.0;
  for (std::size_t i = 0; i < fixtures; ++i) {
    SeededRng rng = SeededRng(seed).split("affine").split(static_cast<std::uint64_t>(i));
    auto fx = vi::make_affine_vi(dim, 0.1, rng);
    const auto g = vi::WeightOperator::identity(dim);
    Vector w0 = numkit::rng_uniform(rng, -5.0, 5.0, dim);
    vi::RunOptions ro;
    ro.w_star = fx.w_star;
    const auto trace = vi::run_inertial_ppa(fx.problem, g, vi::InertialSchedule::constant(alpha),
                                            w0, vi::StopRule{0.0, iters}, ro);
    const auto rep = vi::check_inertial_rate_bound(trace, g, fx.w_star);
    constant = rep.constant;
    for (std::size_t k = 0; k < rep.min_residual.size(); ++k) {
      if (rep.bound[k] > 0) worst = std::max(worst, rep.min_residual[k] / rep.bound[k]);
    }
    if (!rep.rate_holds) r.passed = false;
  }
  r.detail = fmt("constant %.4g; worst residual/bound %.3e", constant, worst);
  return r;
}

CheckResult check_nesterov_rate(std::size_t trials, std::size_t dim, std::size_t iters,
                                std::uint64_t seed) {
  CheckResult r;
  r.passed = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    SeededRng rng = SeededRng(seed).split("nesterov").split(static_cast<std::uint64_t>(i));
    const Vector c = numkit::rng_uniform(rng, -10.0, 10.0, dim);
    const Vector w0 = numkit::rng_uniform(rng, -10.0, 10.0, dim);
    auto prox = [&c](std::span<const double> z, double lam) {
      Vector out(z.size());
      for (std::size_t j = 0; j < z.size(); ++j) out[j] = (z[j] + lam * c[j]) / (1.0 + lam);
      return out;
    };
    auto f = [&c](std::span<const double> w) {
      return 0.5 * numkit::squared_norm(numkit::subtract(w, c));
    };
    const auto trace = vi::nesterov_ippa(prox, [](std::size_t) { return 1.0; }, w0, iters, f);
    const double bound = 4.0 * numkit::squared_norm(numkit::subtract(w0, c));
    for (std::size_t k = 1; k < trace.objective.size(); ++k) {
      const double kk = static_cast<double>(k);
      const double v = kk * kk * trace.objective[k];
      worst = std::max(worst, v / bound);
      if (v > bound) r.passed = false;
    }
  }
  r.detail = fmt("worst k^2 gap / bound %.3e", worst);
  return r;
}

CheckResult check_zero_alpha_identity(std::uint64_t seed) {
  double worst = 0.0;
  // QP fixtures: hand-rolled plain steps against the scheduled runner at α = 0.
  for (std::size_t i = 0; i < 5; ++i) {
    auto fx = qp_fixture(QpCheckOptions{5, 8, seed}, i);
    auto params = fx.params;
    params.schedule = vi::InertialSchedule::constant(0.0);
    const auto w0 = splitting::PrimalDualPoint::zeros(fx.problem);
    const auto trace = splitting::run_ladmm(fx.problem, params, w0, vi::StopRule{0.0, 200});
    auto w = w0;
    for (std::size_t k = 0; k < trace.iterations; ++k) {
      w = splitting::ladmm_step(fx.problem, fx.params, w);
      worst = std::max(worst, numkit::max_abs_diff(w.flatten(), trace.iterates[k + 1]));
    }
  }
  // CPCP: inertial solver with α ≡ 0 against the plain solver.
  cpcp::InstanceSpec spec{32, 32, 2, 51, numkit::TransformKind::DCT2, 614, seed};
  const auto inst = cpcp::generate_instance(spec);
  cpcp::CpcpOptions opt;
  opt.stop = vi::StopRule{1e-5, 200};
  const auto a = cpcp::ladmm_cpcp(inst, opt);
  const auto b = cpcp::iladmm_cpcp(inst, vi::InertialSchedule::constant(0.0), opt);
  double cp = std::max({numkit::max_abs_diff(a.state.L, b.state.L),
                        numkit::max_abs_diff(a.state.S, b.state.S),
                        numkit::max_abs_diff(a.state.p, b.state.p)});
  const bool same_iters = a.trace.iterations == b.trace.iterations;
  worst = std::max(worst, cp);
  CheckResult r;
  r.passed = worst <= 1e-14 && same_iters;
  r.detail = fmt("max deviation %.3e; cpcp iterations %g vs %g", worst,
                 static_cast<double>(a.trace.iterations), static_cast<double>(b.trace.iterations));
  return r;
}

CheckResult check_measurement_identity(std::uint64_t seed) {
  double worst = 0.0;
  SeededRng rng = SeededRng(seed).split("measurement");
  for (auto kind : {numkit::TransformKind::WHT, numkit::TransformKind::DCT2}) {
    for (std::size_t n : {16u, 64u}) {
      const std::size_t q = n * n * 6 / 10;
      const auto op = numkit::make_measurement_op(kind, n, n, q, rng);
      for (int t = 0; t < 3; ++t) {
        const Vector b = numkit::rng_uniform(rng, -1.0, 1.0, op.measurement_dim());
        const Vector back = op.apply(op.adjoint(b));
        worst = std::max(worst, numkit::max_abs_diff(back, b));
      }
    }
  }
  CheckResult r;
  r.passed = worst <= 1e-12;
  r.detail = fmt("max |AA*b - b| %.3e", worst);
  return r;
}

CheckResult check_svt_spectrum(std::uint64_t seed) {
  double worst = 0.0;
  SeededRng rng = SeededRng(seed).split("svt");
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{20, 20}, {30, 12}, {12, 30}}) {
    const auto m = numkit::rng_normal(rng, rows, cols);
    const auto ref = numkit::svd(m).s;
    for (double kappa : {1e-3, 0.5, 2.0, 100.0}) {
      const auto out = prox::svt(m, kappa);
      const auto got = numkit::svd(out).s;
      for (std::size_t i = 0; i < ref.size(); ++i) {
        worst = std::max(worst, std::abs(got[i] - std::max(ref[i] - kappa, 0.0)));
      }
    }
  }
  CheckResult r;
  r.passed = worst <= 1e-10;
  r.detail = fmt("max spectrum deviation %.3e", worst);
  return r;
}

std::vector<CheckResult> run_verify_suite(std::uint64_t seed) {
  QpCheckOptions qp;
  qp.seed += seed;
  std::vector<CheckResult> out;
  out.push_back(timed_check("ladmm_step_inequality",
                            [&] { return check_ladmm_step_inequality(qp); }));
  out.push_back(timed_check("contraction", [&] { return check_contraction(qp); }));
  out.push_back(timed_check("nonergodic_rate", [&] { return check_nonergodic_rate(qp); }));
  out.push_back(timed_check("ergodic_bound", [&] { return check_ergodic_bound(qp); }));
  out.push_back(timed_check("inertial_rate", [&] {
    return check_inertial_rate(10, 10, 0.28, 500, 7 + seed);
  }));
  out.push_back(timed_check("nesterov_rate", [&] {
    return check_nesterov_rate(10, 10, 500, 11 + seed);
  }));
  out.push_back(timed_check("zero_alpha_identity",
                            [&] { return check_zero_alpha_identity(3 + seed); }));
  out.push_back(timed_check("measurement_identity",
                            [&] { return check_measurement_identity(5 + seed); }));
  out.push_back(timed_check("svt_spectrum", [&] { return check_svt_spectrum(9 + seed); }));
  return out;
}

}  // namespace gippa::bench
