#include <cmath>
#include <set>

#include "doctest.h"

#include "gippa/cpcp/beta_controller.hpp"
#include "gippa/cpcp/instance.hpp"
#include "gippa/cpcp/solver.hpp"
#include "gippa/numkit/linalg.hpp"
#include "gippa/numkit/rng.hpp"
#include "gippa/numkit/svd.hpp"
#include "gippa/prox/prox.hpp"

using namespace gippa;
using cpcp::InstanceSpec;
using numkit::DenseMatrix;
using numkit::TransformKind;
using numkit::Vector;

namespace {

InstanceSpec small_spec(std::uint64_t seed = 1, TransformKind kind = TransformKind::DCT2) {
  // 32×32, rank 2, 5% outliers, 60% of the coefficients.
  const std::size_t q = kind == TransformKind::FFT2 ? 307 : 614;
  return {32, 32, 2, 51, kind, q, seed};
}

}  // namespace

TEST_SUITE("instances") {
  TEST_CASE("degrees of freedom and weight") {
    CHECK(cpcp::degrees_of_freedom(10, 10, 2, 5) == 41);
    CHECK(cpcp::degrees_of_freedom(256, 256, 5, 3277) == 5812);
    const auto big = cpcp::generate_instance({1024, 1024, 1, 10, TransformKind::DCT2, 100, 3});
    CHECK(big.lambda == 0.03125);
  }

  TEST_CASE("ground truth has the requested structure") {
    const auto inst = cpcp::generate_instance(small_spec());
    const auto s = numkit::svd(inst.L0).s;
    CHECK(s[1] > 1e-8);
    CHECK(s[2] < 1e-8 * s[0]);
    std::size_t nnz = 0;
    for (double v : inst.S0.data()) {
      if (v != 0.0) {
        ++nnz;
        CHECK(std::abs(v) <= 10.0);
      }
    }
    CHECK(nnz == 51);
    CHECK(inst.support.size() == 51);
    CHECK(std::set<std::size_t>(inst.support.begin(), inst.support.end()).size() == 51);
    CHECK(inst.dof == (32 + 32 - 2) * 2 + 51);
    CHECK(numkit::max_abs_diff(inst.meas.apply(inst.L0 + inst.S0), inst.b) < 1e-12);
  }

  TEST_CASE("same seed reproduces, a new seed does not") {
    const auto a = cpcp::generate_instance(small_spec(5));
    const auto b = cpcp::generate_instance(small_spec(5));
    const auto c = cpcp::generate_instance(small_spec(6));
    CHECK(a.L0 == b.L0);
    CHECK(a.S0 == b.S0);
    CHECK(a.support == b.support);
    CHECK(a.b == b.b);
    CHECK_FALSE(a.L0 == c.L0);
  }

  TEST_CASE("JSON dump regenerates the instance") {
    for (auto kind : {TransformKind::DCT2, TransformKind::WHT, TransformKind::FFT2}) {
      const auto a = cpcp::generate_instance(small_spec(9, kind));
      const auto b = cpcp::instance_from_json(cpcp::instance_to_json(a));
      CHECK(a.b == b.b);
      CHECK(a.S0 == b.S0);
      CHECK(a.spec.q == b.spec.q);
    }
    CHECK_THROWS(cpcp::instance_from_json("{\"m\": 4}"));
  }

  TEST_CASE("infeasible sizes are rejected") {
    CHECK_THROWS(cpcp::generate_instance({8, 8, 9, 1, TransformKind::DCT2, 10, 1}));
    CHECK_THROWS(cpcp::generate_instance({8, 8, 1, 65, TransformKind::DCT2, 10, 1}));
    CHECK_THROWS(cpcp::generate_instance({8, 8, 1, 1, TransformKind::DCT2, 65, 1}));
    CHECK_THROWS(cpcp::generate_instance({6, 6, 1, 1, TransformKind::WHT, 10, 1}));
  }
}

TEST_SUITE("penalty rule") {
  TEST_CASE("rule examples") {
    cpcp::BetaController c;
    c.beta = 1.0;
    // r = β·res²/(2·s·obj): pick res² and obj for a target ratio.
    CHECK(cpcp::update_beta(c, 0.1, 1.0) == 0.5);  // r = 0.05
    c.beta = 1.0;
    CHECK(cpcp::update_beta(c, 12.0, 1.0) == 2.0);  // r = 6
    c.beta = 1e-3;
    CHECK(cpcp::update_beta(c, 0.1 * 1e3, 1.0) == 1e-3);  // r = 0.05 at the floor
    c.beta = 1.0;
    CHECK(cpcp::update_beta(c, 2.0, 1.0) == 1.0);  // r = 1
    c.beta = 80.0;
    CHECK(cpcp::update_beta(c, 1.0, 1.0) == 100.0);  // r = 40, capped
    CHECK(cpcp::beta_ratio(1.0, 3.0, 0.0, 1.0) == 0.0);
    CHECK(cpcp::beta_ratio(2.0, 3.0, 1.5, 0.5) == doctest::Approx(4.0));
  }

  TEST_CASE("controller freezes after its budget") {
    cpcp::BetaController c;
    c.beta = 1.0;
    c.active_iters = 2;
    cpcp::update_beta(c, 0.0, 1.0);
    cpcp::update_beta(c, 0.0, 1.0);
    CHECK(c.beta == 0.25);
    CHECK_FALSE(c.active());
    cpcp::update_beta(c, 0.0, 1.0);
    CHECK(c.beta == 0.25);
  }

  TEST_CASE("beta stays inside its bounds") {
    numkit::SeededRng rng(3);
    cpcp::BetaController c;
    c.active_iters = 1000;
    for (int i = 0; i < 1000; ++i) {
      cpcp::update_beta(c, std::pow(10.0, rng.uniform(-6, 6)), std::pow(10.0, rng.uniform(-3, 3)));
      CHECK(c.beta >= 1e-3);
      CHECK(c.beta <= 1e2);
    }
  }

  TEST_CASE("initial penalty") {
    const auto inst = cpcp::generate_instance(small_spec());
    CHECK(cpcp::default_beta0(inst) == doctest::Approx(0.1 * 614 / numkit::norm1(inst.b)));
    auto zero = inst;
    zero.b.assign(zero.b.size(), 0.0);
    CHECK(cpcp::default_beta0(zero) == 1e2);
  }
}

TEST_SUITE("solvers") {
  TEST_CASE("stopping residual examples") {
    const auto inst = cpcp::generate_instance({2, 2, 1, 1, TransformKind::DCT2, 2, 1});
    auto a = cpcp::CpcpState::zeros(inst);
    CHECK(cpcp::stopping_residual(a, a) == 0.0);
    auto b = a;
    b.L = DenseMatrix::identity(2);
    CHECK(cpcp::stopping_residual(b, a) == doctest::Approx(std::sqrt(2.0)));
  }

  TEST_CASE("zero data stops at once on the zero solution") {
    auto inst = cpcp::generate_instance(small_spec());
    inst.b.assign(inst.b.size(), 0.0);
    const auto res = cpcp::ladmm_cpcp(inst);
    CHECK(res.trace.converged);
    CHECK(res.trace.iterations == 1);
    CHECK(res.state.L.frobenius_norm() == 0.0);
    CHECK(res.state.S.frobenius_norm() == 0.0);
  }

  TEST_CASE("first L-update minimises its subproblem") {
    const auto inst = cpcp::generate_instance(small_spec(2));
    cpcp::CpcpOptions opt;
    opt.stop = {0.0, 1};
    const auto res = cpcp::ladmm_cpcp(inst, opt);
    const double beta = res.trace.betas[0], tau = opt.tau;
    // From zeros: U = −𝒜*b, so L¹ = argmin ‖L‖_* + (β/2τ)‖L − τ𝒜*b‖².
    DenseMatrix center = inst.meas.adjoint(inst.b);
    center *= tau;
    CHECK(numkit::max_abs_diff(res.state.L, prox::svt(center, tau / beta)) < 1e-10);
    auto obj = [&](const DenseMatrix& l) {
      const double d = numkit::frobenius_distance(l, center);
      return prox::nuclear_norm(l) + beta / (2.0 * tau) * d * d;
    };
    numkit::SeededRng rng(4);
    const double base = obj(res.state.L);
    for (int t = 0; t < 50; ++t) {
      auto pert = numkit::rng_normal(rng, 32, 32);
      pert *= 1e-3;
      CHECK(obj(res.state.L + pert) >= base - 1e-9);
    }
  }

  TEST_CASE("zero inertia reproduces the plain solver exactly") {
    for (auto kind : {TransformKind::DCT2, TransformKind::WHT, TransformKind::FFT2}) {
      const auto inst = cpcp::generate_instance(small_spec(3, kind));
      cpcp::CpcpOptions opt;
      opt.stop = {1e-5, 60};
      const auto a = cpcp::ladmm_cpcp(inst, opt);
      const auto b = cpcp::iladmm_cpcp(inst, vi::InertialSchedule::constant(0.0), opt);
      CHECK(a.trace.iterations == b.trace.iterations);
      CHECK(numkit::max_abs_diff(a.state.L, b.state.L) <= 1e-14);
      CHECK(numkit::max_abs_diff(a.state.S, b.state.S) <= 1e-14);
      CHECK(numkit::max_abs_diff(a.state.p, b.state.p) <= 1e-14);
    }
  }

  TEST_CASE("G-norm steps shrink under a fixed penalty") {
    const auto inst = cpcp::generate_instance(small_spec(4));
    cpcp::CpcpOptions opt;
    opt.beta0 = 0.5;
    opt.beta_adapt_iters = 0;
    opt.record_g_residuals = true;
    opt.stop = {0.0, 150};
    const auto res = cpcp::ladmm_cpcp(inst, opt);
    const auto& d = res.trace.step_residuals;
    REQUIRE(d.size() == 150);
    for (std::size_t k = 1; k < d.size(); ++k) CHECK(d[k] <= d[k - 1] * (1.0 + 1e-10) + 1e-30);
  }

  TEST_CASE("weighting operator is positive on random directions") {
    const auto inst = cpcp::generate_instance(small_spec(5));
    const auto g = cpcp::cpcp_weight(inst, 0.7, 0.99, 0.99);
    numkit::SeededRng rng(6);
    for (int t = 0; t < 10; ++t) {
      const Vector v = numkit::rng_uniform(rng, -1, 1, g.dim());
      CHECK(g.quad(v) > 0.0);
      CHECK(g.quad(v) == doctest::Approx(numkit::dot(v, g.apply(v))).epsilon(1e-10));
    }
  }

  TEST_CASE("converged runs are nearly feasible and recover a well-sampled instance") {
    const auto inst = cpcp::generate_instance({64, 64, 2, 205, TransformKind::DCT2, 2458, 7});
    cpcp::CpcpOptions opt;
    opt.beta0 = 0.5;
    opt.beta_adapt_iters = 0;
    const auto res = cpcp::iladmm_cpcp(inst, vi::InertialSchedule::constant(0.28), opt);
    const auto met = cpcp::recovery_metrics(res.state, inst, res.trace.converged);
    CHECK(met.converged);
    CHECK(met.feasibility <= 10 * 1e-5);
    CHECK(met.relL < 1e-3);
    CHECK(met.relS < 1e-3);
    CHECK_FALSE(met.expected_failure);
    CHECK(res.trace.lengths_consistent());
  }

  TEST_CASE("recovery metrics") {
    const auto inst = cpcp::generate_instance(small_spec());
    auto st = cpcp::CpcpState::zeros(inst);
    st.L = inst.L0;
    st.S = inst.S0;
    const auto m = cpcp::recovery_metrics(st, inst, true);
    CHECK(m.relL == 0.0);
    CHECK(m.relS == 0.0);
    CHECK(m.feasibility < 1e-14);
    CHECK(m.q_over_dof == doctest::Approx(614.0 / 175.0));
    CHECK_FALSE(m.expected_failure);
    const auto sparse = cpcp::generate_instance({32, 32, 5, 200, TransformKind::DCT2, 300, 1});
    CHECK(cpcp::recovery_metrics(cpcp::CpcpState::zeros(sparse), sparse, false).expected_failure);
  }
}
