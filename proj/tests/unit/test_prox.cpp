#include <cmath>

#include "doctest.h"

#include "gippa/numkit/linalg.hpp"
#include "gippa/numkit/rng.hpp"
#include "gippa/numkit/svd.hpp"
#include "gippa/prox/prox.hpp"

using namespace gippa;
using numkit::DenseMatrix;
using numkit::SeededRng;
using numkit::Vector;

TEST_SUITE("soft_threshold") {
  TEST_CASE("scalar examples") {
    CHECK(prox::soft_threshold(Vector{3.0}, 1.0)[0] == 2.0);
    CHECK(prox::soft_threshold(Vector{-0.5}, 1.0)[0] == 0.0);
    CHECK(prox::soft_threshold(Vector{-4.0}, 1.5)[0] == -2.5);
    CHECK(prox::soft_threshold(Vector{1.0}, 1.0)[0] == 0.0);
  }

  TEST_CASE("minimises the l1 prox objective against a grid search") {
    SeededRng rng(31);
    const Vector v = numkit::rng_uniform(rng, -5.0, 5.0, 6);
    const double kappa = rng.uniform(0.1, 2.0);
    const Vector w = prox::soft_threshold(v, kappa);
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto obj = [&](double x) { return kappa * std::abs(x) + 0.5 * (x - v[i]) * (x - v[i]); };
      double best = INFINITY;
      const int pts = 10000;
      for (int k = 0; k <= pts; ++k) best = std::min(best, obj(-6.0 + 12.0 * k / pts));
      CHECK(obj(w[i]) <= best + 1e-12);
      CHECK(best - obj(w[i]) < 1e-5);
    }
  }

  TEST_CASE("in-place variant agrees") {
    Vector v{3.0, -0.2, -7.0};
    const Vector ref = prox::soft_threshold(v, 0.5);
    prox::soft_threshold_inplace(v, 0.5);
    CHECK(v == ref);
  }
}

TEST_SUITE("svt") {
  TEST_CASE("diagonal input reduces to soft thresholding") {
    DenseMatrix d(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    const auto out = prox::svt(d, 2.0);
    CHECK(out(0, 0) == doctest::Approx(1.0));
    CHECK(std::abs(out(0, 1)) < 1e-15);
    CHECK(std::abs(out(1, 0)) < 1e-15);
    CHECK(std::abs(out(1, 1)) < 1e-15);
  }

  TEST_CASE("threshold above the top singular value gives zero") {
    SeededRng rng(2);
    const auto m = numkit::rng_normal(rng, 5, 4);
    const double s1 = numkit::svd(m).s[0];
    CHECK(prox::svt(m, s1).frobenius_norm() < 1e-12);
    CHECK(prox::svt(m, 2.0 * s1).frobenius_norm() == 0.0);
  }

  TEST_CASE("spectrum equals soft-thresholded singular values") {
    SeededRng rng(6);
    for (double kappa : {0.1, 0.8, 1.7}) {
      const auto m = numkit::rng_normal(rng, 6, 4);
      const auto s = numkit::svd(m).s;
      const auto out = prox::svt(m, kappa);
      const auto got = numkit::svd(out).s;
      for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(std::abs(got[k] - std::max(s[k] - kappa, 0.0)) <= 1e-10);
      }
      const auto det = prox::svt_detailed(m, kappa);
      CHECK(numkit::max_abs_diff(det.value, out) < 1e-13);
      for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(det.singular_values[k] == doctest::Approx(std::max(s[k] - kappa, 0.0)));
      }
    }
  }

  TEST_CASE("svt output beats random perturbations on the prox objective") {
    SeededRng rng(10);
    const auto m = numkit::rng_normal(rng, 5, 5);
    const double kappa = 0.7;
    const auto x = prox::svt(m, kappa);
    auto obj = [&](const DenseMatrix& w) {
      const double d = numkit::frobenius_distance(w, m);
      return kappa * prox::nuclear_norm(w) + 0.5 * d * d;
    };
    const double base = obj(x);
    for (int t = 0; t < 50; ++t) {
      auto pert = numkit::rng_normal(rng, 5, 5);
      pert *= 1e-3;
      CHECK(obj(x + pert) >= base - 1e-12);
    }
  }

  TEST_CASE("warm-started svt matches the cold one") {
    SeededRng rng(11);
    const auto m = numkit::rng_normal(rng, 8, 6);
    const auto cold = prox::svt_detailed(m, 0.5);
    const auto warm = prox::svt_detailed(m, 0.5, &cold.right_factor);
    CHECK(numkit::max_abs_diff(cold.value, warm.value) < 1e-12);
  }

  TEST_CASE("nonpositive threshold is rejected") {
    CHECK_THROWS(prox::svt(DenseMatrix(2, 2, 1.0), 0.0));
  }
}

TEST_SUITE("projection and oracles") {
  TEST_CASE("box projection") {
    const Vector lo{0.0}, hi{1.0};
    CHECK(prox::project_box(Vector{0.4}, lo, hi)[0] == 0.4);
    CHECK(prox::project_box(Vector{5.0}, lo, hi)[0] == 1.0);
    CHECK(prox::project_box(Vector{-2.0}, lo, hi)[0] == 0.0);
    SeededRng rng(1);
    const Vector l3{-1, -1, -1}, h3{1, 2, 3};
    const Vector v = numkit::rng_uniform(rng, -5, 5, 3);
    const Vector once = prox::project_box(v, l3, h3);
    CHECK(prox::project_box(once, l3, h3) == once);
  }

  TEST_CASE("quadratic oracle solves its optimality condition") {
    SeededRng rng(4);
    const auto r = numkit::rng_normal(rng, 4, 4);
    auto p = numkit::multiply_at_b(r, r);
    const Vector c = numkit::rng_uniform(rng, -1, 1, 4);
    const auto orc = prox::quadratic_oracle(p, c);
    const Vector z = numkit::rng_uniform(rng, -1, 1, 4);
    const double k = 0.3;
    const Vector w = orc.eval(z, k);
    // Pw + c + (w − z)/κ = 0
    Vector g = numkit::matvec(p, w);
    for (std::size_t i = 0; i < 4; ++i) g[i] += c[i] + (w[i] - z[i]) / k;
    CHECK(numkit::norm2(g) < 1e-10);
  }

  TEST_CASE("l1, box and zero oracles") {
    const auto l1 = prox::l1_oracle(2.0);
    CHECK(l1.eval(Vector{3.0}, 0.5)[0] == doctest::Approx(2.0));
    CHECK(l1.objective(Vector{-1.5, 1.0}) == doctest::Approx(5.0));
    const auto box = prox::box_oracle(Vector{0.0}, Vector{1.0});
    CHECK(box.eval(Vector{2.0}, 1.0)[0] == 1.0);
    CHECK(box.project(Vector{-3.0})[0] == 0.0);
    const auto zero = prox::zero_oracle();
    CHECK(zero.eval(Vector{1.25}, 9.0)[0] == 1.25);
    CHECK(zero.objective(Vector{1.25}) == 0.0);
  }
}
