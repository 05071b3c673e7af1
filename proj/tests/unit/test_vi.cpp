#include <cmath>
#include <numbers>

#include "doctest.h"

#include "gippa/numkit/linalg.hpp"
#include "gippa/numkit/rng.hpp"
#include "gippa/prox/prox.hpp"
#include "gippa/vi/diagnostics.hpp"
#include "gippa/vi/engine.hpp"
#include "gippa/vi/fixtures.hpp"
#include "gippa/vi/nesterov.hpp"
#include "gippa/vi/schedule.hpp"

using namespace gippa;
using numkit::SeededRng;
using numkit::Vector;
using vi::InertialSchedule;
using vi::WeightOperator;

TEST_SUITE("inertial step") {
  TEST_CASE("plain step on the identity gradient halves the point") {
    const auto prob = vi::make_identity_gradient(3);
    const auto g = WeightOperator::identity(3);
    const Vector w0{2.0, -4.0, 1.0};
    const auto st = vi::inertial_ppa_step(prob, g, w0, w0, 0.0, 1.0);
    for (std::size_t i = 0; i < 3; ++i) CHECK(st.w_next[i] == doctest::Approx(w0[i] / 2));
  }

  TEST_CASE("one-dimensional inertial step by hand") {
    const auto prob = vi::make_identity_gradient(1);
    const auto g = WeightOperator::identity(1);
    const auto st = vi::inertial_ppa_step(prob, g, Vector{1.0}, Vector{0.0}, 0.28, 1.0);
    CHECK(st.w_bar[0] == doctest::Approx(1.28));
    CHECK(st.w_next[0] == doctest::Approx(0.64));
  }

  TEST_CASE("solution is a fixed point") {
    const auto fx = vi::make_l1_strongly_monotone(Vector{3.0, -0.2, 1.0}, 0.5, 2.0);
    const auto g = WeightOperator::scaled_identity(3, 1.5);
    const auto st = vi::inertial_ppa_step(fx.problem, g, fx.w_star, fx.w_star, 0.28, 0.7);
    CHECK(numkit::max_abs_diff(st.w_next, fx.w_star) < 1e-14);
  }

  TEST_CASE("resolvent output satisfies its VI at random probes") {
    SeededRng rng(3);
    vi::Box box{Vector(5, -0.5), Vector(5, 0.5)};
    const auto fx = vi::make_affine_vi(5, 0.2, rng, box);
    const auto g = WeightOperator::scaled_identity(5, 2.0);
    const Vector z = numkit::rng_uniform(rng, -2, 2, 5);
    const Vector w = fx.problem.resolvent(z, 0.5, g);
    CHECK(fx.problem.omega_contains(w));
    for (const auto& probe : vi::sample_omega_probes(fx.problem, w, 100, 1.0, rng)) {
      CHECK(vi::vi_slack(fx.problem, g, probe, w, z, 0.5) >= -1e-8);
    }
    CHECK(vi::vi_slack(fx.problem, g, w, w, z, 0.5) == doctest::Approx(0.0));
  }

  TEST_CASE("l1 fixture closed form matches its optimality condition") {
    const auto fx = vi::make_l1_strongly_monotone(Vector{3.0, -0.2, -2.0}, 0.5, 2.0);
    CHECK(fx.w_star[0] == doctest::Approx(2.75));
    CHECK(fx.w_star[1] == 0.0);
    CHECK(fx.w_star[2] == doctest::Approx(-1.75));
    SeededRng rng(8);
    for (const auto& probe : vi::sample_omega_probes(fx.problem, fx.w_star, 50, 3.0, rng)) {
      CHECK(vi::solution_slack(fx.problem, probe, fx.w_star) >= -1e-12);
    }
    CHECK_THROWS(fx.problem.resolvent(fx.w_star, 1.0, WeightOperator::from_matrix(
                                                         numkit::DenseMatrix::diagonal(Vector{1, 2, 3}))));
  }
}

TEST_SUITE("inertial run") {
  TEST_CASE("already optimal start stops after one step") {
    const auto prob = vi::make_identity_gradient(4);
    const auto tr = vi::run_inertial_ppa(prob, WeightOperator::identity(4),
                                         InertialSchedule::constant(0.28), Vector(4, 0.0));
    CHECK(tr.iterations == 1);
    CHECK(tr.converged);
    CHECK(tr.lengths_consistent());
  }

  TEST_CASE("2-D strongly monotone affine VI converges to the linear solve") {
    SeededRng rng(5);
    const auto fx = vi::make_affine_vi(2, 0.5, rng);
    const Vector direct = numkit::solve_linear(fx.M, numkit::scaled(fx.q, -1.0));
    const auto tr = vi::run_inertial_ppa(fx.problem, WeightOperator::identity(2),
                                         InertialSchedule::constant(0.28), Vector{5.0, -5.0},
                                         vi::StopRule{1e-12, 5000});
    CHECK(tr.converged);
    CHECK(numkit::max_abs_diff(tr.iterates.back(), direct) < 1e-6);
  }

  TEST_CASE("zero inertia reproduces the classical proximal point trajectory") {
    SeededRng rng(9);
    const auto fx = vi::make_affine_vi(4, 0.3, rng);
    const auto g = WeightOperator::scaled_identity(4, 0.5);
    const Vector w0{1.0, 2.0, 3.0, 4.0};
    const auto tr = vi::run_inertial_ppa(fx.problem, g, InertialSchedule::constant(0.0), w0,
                                         vi::StopRule{0.0, 50});
    Vector w = w0;
    for (std::size_t k = 0; k < 50; ++k) {
      w = fx.problem.resolvent(w, 1.0, g);
      CHECK(numkit::max_abs_diff(w, tr.iterates[k + 1]) == 0.0);
    }
  }

  TEST_CASE("trace lengths line up") {
    SeededRng rng(2);
    const auto fx = vi::make_affine_vi(3, 0.1, rng);
    vi::RunOptions ro;
    ro.w_star = fx.w_star;
    ro.objective = [](std::span<const double> w) { return numkit::squared_norm(w); };
    const auto tr = vi::run_inertial_ppa(fx.problem, WeightOperator::identity(3),
                                         InertialSchedule::constant(0.2), Vector(3, 1.0),
                                         vi::StopRule{0.0, 25}, ro);
    CHECK(tr.iterations == 25);
    CHECK(tr.iterates.size() == 26);
    CHECK(tr.phi.size() == 26);
    CHECK(tr.objective.size() == 26);
    CHECK(tr.alphas.size() == 25);
    CHECK(tr.lengths_consistent());
  }
}

TEST_SUITE("rate certificate") {
  TEST_CASE("constant values") {
    auto constant = [](double a) { return 1.0 + 2.0 / (1.0 - 3.0 * a); };
    CHECK(constant(0.28) == doctest::Approx(13.5));
    CHECK(constant(0.0) == doctest::Approx(3.0));
    const auto prob = vi::make_identity_gradient(2);
    for (double a : {0.0, 0.28}) {
      const auto tr = vi::run_inertial_ppa(prob, WeightOperator::identity(2),
                                           InertialSchedule::constant(a), Vector{1.0, 1.0},
                                           vi::StopRule{0.0, 5});
      const auto rep = vi::check_inertial_rate_bound(tr, WeightOperator::identity(2), Vector{0.0, 0.0});
      CHECK(rep.constant == doctest::Approx(constant(a)));
    }
  }

  TEST_CASE("bound holds on a 2-D affine instance for 200 iterations") {
    SeededRng rng(41);
    const auto fx = vi::make_affine_vi(2, 0.05, rng);
    const auto g = WeightOperator::identity(2);
    vi::RunOptions ro;
    ro.w_star = fx.w_star;
    const auto tr = vi::run_inertial_ppa(fx.problem, g, InertialSchedule::constant(0.28),
                                         Vector{3.0, -7.0}, vi::StopRule{0.0, 200}, ro);
    const auto rep = vi::check_inertial_rate_bound(tr, g, fx.w_star);
    CHECK(rep.ok());
    REQUIRE(rep.min_residual.size() == 200);
    const double phi0 = g.quad_diff(Vector{3.0, -7.0}, fx.w_star);
    for (std::size_t k = 1; k <= 200; ++k) {
      CHECK(rep.min_residual[k - 1] <= 13.5 * phi0 / static_cast<double>(k) + 1e-10);
    }
  }

  TEST_CASE("bound holds on box-constrained instances with a non-identity G") {
    SeededRng rng(12);
    vi::Box box{Vector(6, -1.0), Vector(6, 1.0)};
    const auto fx = vi::make_affine_vi(6, 0.1, rng, box);
    const auto g = WeightOperator::from_matrix(numkit::DenseMatrix::diagonal(Vector{1, 2, 3, 1, 2, 3}));
    vi::RunOptions ro;
    ro.w_star = fx.w_star;
    const auto tr = vi::run_inertial_ppa(fx.problem, g, InertialSchedule::nondecreasing_capped(0.3, 20),
                                         Vector(6, 0.9), vi::StopRule{0.0, 150}, ro);
    CHECK(vi::check_inertial_rate_bound(tr, g, fx.w_star).ok());
  }

  TEST_CASE("certificate refuses weights of one third or more") {
    const auto prob = vi::make_identity_gradient(1);
    const auto tr = vi::run_inertial_ppa(prob, WeightOperator::identity(1),
                                         InertialSchedule::constant(0.4), Vector{1.0},
                                         vi::StopRule{0.0, 3});
    CHECK_THROWS(vi::check_inertial_rate_bound(tr, WeightOperator::identity(1), Vector{0.0}));
  }
}

TEST_SUITE("schedules") {
  TEST_CASE("summable weights") {
    const auto g = WeightOperator::identity(2);
    const Vector a{1.0, 1.0};
    CHECK(vi::summable_alpha(3, a, a, g, 0.3, 1.0) == 0.3);
    const Vector b{1.0, 0.0}, c{0.0, 0.0};  // ‖Δ‖² = 1 = C
    CHECK(vi::summable_alpha(1, b, c, g, 0.3, 1.0) == doctest::Approx(0.3));
    CHECK(vi::summable_alpha(1, b, c, g, 0.99, 1.0) == doctest::Approx(0.99));
    const Vector d{0.5, 0.0};  // ‖Δ‖² = 0.25
    CHECK(vi::summable_alpha(2, d, c, g, 0.99, 0.5) == doctest::Approx(0.5));
    CHECK_THROWS(vi::summable_alpha(0, b, c, g, 0.3, 1.0));
  }

  TEST_CASE("summable series stays below C pi^2 / 6") {
    SeededRng rng(77);
    const auto g = WeightOperator::identity(1);
    const double cst = 0.7;
    double sum = 0.0;
    for (std::size_t k = 1; k <= 10000; ++k) {
      const Vector wk{rng.uniform(-100, 100)}, wkm1{rng.uniform(-100, 100)};
      sum += vi::summable_alpha(k, wk, wkm1, g, 0.9, cst) * g.quad_diff(wk, wkm1);
    }
    CHECK(sum <= cst * std::numbers::pi * std::numbers::pi / 6.0);
  }

  TEST_CASE("schedule kinds") {
    const auto g = WeightOperator::identity(1);
    const Vector x{1.0}, y{0.0};
    const auto ramp = InertialSchedule::nondecreasing_capped(0.3, 10);
    CHECK(ramp.alpha(0, x, y, g) == 0.0);
    CHECK(ramp.alpha(5, x, y, g) == doctest::Approx(0.15));
    CHECK(ramp.alpha(50, x, y, g) == doctest::Approx(0.3));
    const auto guard = InertialSchedule::summable_guard(0.5, 1.0);
    CHECK(guard.alpha(0, x, y, g) == 0.0);
    CHECK_FALSE(guard.in_rate_regime());
    CHECK(InertialSchedule::constant(0.28).in_rate_regime());
    CHECK_FALSE(InertialSchedule::constant(0.35).in_rate_regime());
    CHECK_THROWS(InertialSchedule::constant(1.0));
    CHECK_THROWS(InertialSchedule::constant(-0.1));
    auto lam = InertialSchedule::constant(0.1);
    lam.with_lambdas([](std::size_t k) { return 2.0 - 0.5 * static_cast<double>(k); }, 1.0);
    CHECK(lam.lambda(2) == 1.0);
    CHECK_THROWS(lam.lambda(3));
  }
}

TEST_SUITE("heavy ball and nesterov") {
  TEST_CASE("discretisation constants") {
    auto p = vi::hbf_params(1.0, 1.0);
    CHECK(p.lambda == doctest::Approx(0.5));
    CHECK(p.alpha == doctest::Approx(0.5));
    p = vi::hbf_params(2.0, 0.5);
    CHECK(p.lambda == doctest::Approx(2.0));
    CHECK(p.alpha == doctest::Approx(0.5));
    double prev = 1.0;
    for (double gamma : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
      const double a = vi::hbf_params(1.0, gamma).alpha;
      CHECK(a < prev);
      prev = a;
    }
    CHECK(prev < 1e-3);
    CHECK_THROWS(vi::hbf_params(0.0, 1.0));
  }

  TEST_CASE("t-sequence values") {
    const double t1 = vi::nesterov_next_t(1.0);
    const double t2 = vi::nesterov_next_t(t1);
    CHECK(t1 == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0));
    CHECK(t2 == doctest::Approx(2.1935).epsilon(1e-4));
    CHECK((t1 - 1.0) / t2 == doctest::Approx(0.2817).epsilon(1e-3));
  }

  TEST_CASE("nesterov run records its weights") {
    const Vector c(10, 1.0);
    auto prox = [&c](std::span<const double> z, double lam) {
      Vector out(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) out[i] = (z[i] + lam * c[i]) / (1.0 + lam);
      return out;
    };
    auto f = [&c](std::span<const double> w) { return 0.5 * numkit::squared_norm(numkit::subtract(w, c)); };
    const Vector w0(10, -3.0);
    const auto tr = vi::nesterov_ippa(prox, [](std::size_t) { return 1.0; }, w0, 500, f);
    REQUIRE(tr.t_sequence.size() == 501);
    CHECK(tr.alphas[0] == 0.0);
    CHECK(tr.alphas[1] == doctest::Approx(0.2817).epsilon(1e-3));
    const double bound = 4.0 * numkit::squared_norm(numkit::subtract(w0, c));
    for (std::size_t k = 1; k <= 500; ++k) {
      const double kk = static_cast<double>(k);
      CHECK(kk * kk * tr.objective[k] <= bound);
    }
  }
}

TEST_SUITE("weight operators and monotonicity") {
  TEST_CASE("affine fixtures are H-monotone") {
    SeededRng rng(19);
    const auto fx = vi::make_affine_vi(5, 0.4, rng);
    CHECK(vi::h_monotone_slack(fx.problem, fx.w_star, 200, 3.0, rng) >= -1e-10);
  }

  TEST_CASE("quad and apply agree") {
    SeededRng rng(20);
    const auto g = WeightOperator::from_matrix(numkit::DenseMatrix::diagonal(Vector{1, 2, 3}));
    CHECK(vi::quad_consistency_error(g, 50, rng) < 1e-14);
    CHECK(vi::min_sampled_quad(g, nullptr, 200, rng) >= 1.0 - 1e-12);
    CHECK(g.declared_psd());
    numkit::DenseMatrix bad(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS(WeightOperator::from_matrix(bad));
  }
}
