#include <doctest.h>

#include <array>
#include <numbers>

#include "atomwall/interpolation.hpp"
#include "atomwall/error.hpp"
#include "atomwall/quadrature.hpp"
#include "support.hpp"

using namespace atomwall;
using testing::rel_diff;

TEST_CASE("gauss_laguerre integrates polynomials exactly") {
  for (std::size_t n : {4u, 32u, 64u}) {
    const auto& rule = quad::gauss_laguerre(n);
    REQUIRE(rule.nodes.size() == n);
    // int_0^inf e^{-t} t^k dt = k!
    double factorial = 1.0;
    for (int k = 0; k < static_cast<int>(std::min<std::size_t>(2 * n - 1, 20)); ++k) {
      if (k > 0) factorial *= k;
      const double v = quad::apply(rule, [k](double t) { return std::pow(t, k); });
      CAPTURE(n);
      CAPTURE(k);
      CHECK(rel_diff(v, factorial) < 1e-11);
    }
  }
}

TEST_CASE("gauss_laguerre rules are cached and ordered") {
  const auto& a = quad::gauss_laguerre(128);
  const auto& b = quad::gauss_laguerre(128);
  CHECK(&a == &b);
  for (std::size_t i = 1; i < a.nodes.size(); ++i) CHECK(a.nodes[i] > a.nodes[i - 1]);
  double wsum = 0.0;
  for (double w : a.weights) {
    CHECK(w >= 0.0);
    wsum += w;
  }
  CHECK(rel_diff(wsum, 1.0) < 1e-12);
}

TEST_CASE("gauss_laguerre converges on a smooth non-polynomial integrand") {
  // int_0^inf e^{-t} cos t dt = 1/2
  const double v = quad::apply(quad::gauss_laguerre(64), [](double t) { return std::cos(t); });
  CHECK(std::abs(v - 0.5) < 1e-12);
}

TEST_CASE("integrate_adaptive") {
  SUBCASE("smooth") {
    const auto est = quad::integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(est.converged);
    CHECK(std::abs(est.value - 2.0) < 1e-12);
  }
  SUBCASE("integrable endpoint singularity") {
    quad::AdaptiveOptions opt;
    opt.rel_tol = 1e-9;
    const auto est = quad::integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt);
    CHECK(est.converged);
    CHECK(std::abs(est.value - 2.0) < 1e-8);
  }
  SUBCASE("breakpoints") {
    const std::array<double, 4> bp{0.0, 1.0, 2.0, 3.0};
    const auto est = quad::integrate_adaptive([](double x) { return std::abs(x - 1.0); }, bp);
    CHECK(std::abs(est.value - 2.5) < 1e-13);
  }
  SUBCASE("budget exhaustion is reported") {
    quad::AdaptiveOptions opt;
    opt.rel_tol = 1e-15;
    opt.max_intervals = 3;
    const auto est = quad::integrate_adaptive([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, opt);
    CHECK_FALSE(est.converged);
    CHECK(est.intervals <= 3);
  }
}

TEST_CASE("MonotoneCubic") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y{5.0, 4.0, 4.0, 1.0, 0.5};
  const MonotoneCubic f(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(f(x[i]) == doctest::Approx(y[i]).epsilon(1e-15));
  // monotone data stays monotone, flat segments stay flat
  double prev = f(0.0);
  for (int i = 1; i <= 400; ++i) {
    const double v = f(4.0 * i / 400.0);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  CHECK(f(1.5) == doctest::Approx(4.0));
  CHECK_THROWS_AS(f(4.5), DomainError);
  CHECK_THROWS_AS(f(-0.1), DomainError);

  SUBCASE("reproduces a line") {
    const MonotoneCubic g({0.0, 1.0, 3.0, 7.0}, {1.0, 3.0, 7.0, 15.0});
    CHECK(g(2.2) == doctest::Approx(5.4).epsilon(1e-14));
  }
}
