#include <doctest.h>

#include <numbers>

#include "atomwall/constants.hpp"
#include "atomwall/error.hpp"
#include "atomwall/lifshitz.hpp"
#include "atomwall/quadrature.hpp"
#include "support.hpp"

using namespace atomwall;
using testing::rel_diff;

namespace {

const double he_alpha0 = au_volume_to_si(315.63);
const double he_omega = ev_to_angular(1.18);
const double au_omega_p = ev_to_angular(9.0);

PolarizabilityModel he_oscillator() {
  return Oscillators{OscillatorSet({{he_alpha0 * he_omega * he_omega / constants::oscillator_prefactor, he_omega}})};
}

ComputationRequest request(PolarizabilityModel atom, DielectricModel wall, double a, double T) {
  ComputationRequest req;
  req.atom = std::move(atom);
  req.wall = std::move(wall);
  req.separation = a;
  req.temperature = T;
  return req;
}

// sum_{l>=1} 2 e^{-l tau} ((l tau)^2 + 2 l tau + 2) from the geometric-series identities
double ideal_static_bracket(double tau) {
  const double x = std::exp(-tau);
  const double s0 = x / (1.0 - x);
  const double s1 = x / ((1.0 - x) * (1.0 - x));
  const double s2 = x * (1.0 + x) / ((1.0 - x) * (1.0 - x) * (1.0 - x));
  return 2.0 + 2.0 * (tau * tau * s2 + 2.0 * tau * s1 + 2.0 * s0);
}

} // namespace

TEST_CASE("matsubara_zeta") {
  CHECK(matsubara_zeta(0, 3e-9, 300.0) == 0.0);
  CHECK(rel_diff(matsubara_zeta(1, 3e-9, 300.0), 4.94e-3) < 1e-3);
  for (std::size_t l : {1u, 7u, 1000u}) CHECK(matsubara_zeta(2 * l, 5e-8, 77.0) == 2.0 * matsubara_zeta(l, 5e-8, 77.0));
  CHECK(characteristic_frequency(1e-6) == constants::c / 2e-6);
  CHECK_THROWS_AS(matsubara_zeta(1, 0.0, 300.0), DomainError);
  CHECK_THROWS_AS(matsubara_zeta(1, 1e-8, -1.0), DomainError);
}

TEST_CASE("reflection coefficients") {
  CHECK(reflection_par(1.0, 0.3, 0.7) == 0.0);
  CHECK(reflection_perp(1.0, 0.3, 0.7) == 0.0);
  CHECK(rel_diff(reflection_par(5.0, 0.0, 2.0), 4.0 / 6.0) < 1e-15);
  CHECK(reflection_perp(5.0, 0.0, 2.0) == 0.0);
  const double v = 3.0 - 2.0 * std::sqrt(2.0);
  CHECK(rel_diff(reflection_par(2.0, 1.0, 1.0), v) < 1e-14);
  CHECK(rel_diff(reflection_perp(2.0, 1.0, 1.0), v) < 1e-14);

  SUBCASE("agree with the textbook fractions") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
      const double eps = 1.0 + 50.0 * u(rng), zeta = 5.0 * u(rng), y = zeta + 3.0 * u(rng) + 1e-3;
      const double root = std::sqrt(y * y + zeta * zeta * (eps - 1.0));
      CHECK(std::abs(reflection_par(eps, zeta, y) - (eps * y - root) / (eps * y + root)) < 1e-13);
      CHECK(std::abs(reflection_perp(eps, zeta, y) - (root - y) / (root + y)) < 1e-13);
    }
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(reflection_par(0.5, 0.1, 1.0), DomainError);
    CHECK_THROWS_AS(reflection_par(2.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(reflection_perp(2.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(reflection_perp(2.0, -1.0, 1.0), DomainError);
  }
}

TEST_CASE("reflection coefficient bounds") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double eps = std::pow(10.0, 8.0 * u(rng));
    const double zeta = 30.0 * u(rng);
    const double y = zeta + 20.0 * u(rng) + 1e-9;
    const double rp = reflection_par(eps, zeta, y);
    const double rs = reflection_perp(eps, zeta, y);
    CHECK(rs >= 0.0);
    CHECK(rs <= rp);
    CHECK(rp < 1.0);
  }
}

TEST_CASE("ideal_metal_integral") {
  CHECK(ideal_metal_integral(0.0) == 4.0);
  CHECK(rel_diff(ideal_metal_integral(1.0), 10.0 / std::numbers::e) < 1e-15);
  double prev = 4.0;
  for (int i = 1; i <= 100; ++i) {
    const double v = ideal_metal_integral(0.5 * i);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(ideal_metal_integral(-1.0), DomainError);
}

TEST_CASE("matsubara_integral") {
  CHECK(matsubara_integral(1.0, 0.7).value == 0.0);
  CHECK(rel_diff(matsubara_integral(2.0, 0.0).value, 4.0 / 3.0) < 1e-13);
  CHECK(matsubara_integral(3.0, 0.5).value > 0.0);
  CHECK_THROWS_AS(matsubara_integral(0.5, 0.1), DomainError);
  CHECK_THROWS_AS(matsubara_integral(2.0, -0.1), DomainError);

  SUBCASE("approaches the ideal metal for large eps") {
    for (int i = 0; i <= 30; ++i) {
      const double zeta = static_cast<double>(i);
      CHECK(rel_diff(matsubara_integral(1e12, zeta).value, ideal_metal_integral(zeta)) < 1e-5);
    }
  }
  SUBCASE("agrees with adaptive quadrature in y") {
    for (double eps : {1.01, 1.5, 4.0, 30.0, 3000.0, 1e8})
      for (double zeta : {0.0, 1e-3, 0.05, 0.5, 3.0, 12.0}) {
        CAPTURE(eps);
        CAPTURE(zeta);
        auto g = [&](double y) {
          if (y == 0.0) return 0.0;
          return std::exp(-y) * ((2.0 * y * y - zeta * zeta) * reflection_par(eps, zeta, y) +
                                 zeta * zeta * reflection_perp(eps, zeta, y));
        };
        std::vector<double> breaks{zeta};
        for (double d : {1e-4, 1e-2, 0.1, 1.0, 5.0, 20.0, 80.0}) breaks.push_back(zeta + d);
        quad::AdaptiveOptions opt;
        opt.rel_tol = 1e-13;
        const auto oracle = quad::integrate_adaptive(g, breaks, opt);
        REQUIRE(oracle.converged);
        const auto a = matsubara_integral(eps, zeta, 1e-9);
        CHECK(rel_diff(a.value, oracle.value) < 1e-9);
        CHECK(a.nodes > 0);
      }
  }
  SUBCASE("monotone in eps") {
    for (double zeta : {0.0, 0.2, 2.0}) {
      double prev = 0.0;
      for (double eps : {1.0, 1.1, 2.0, 10.0, 1e3, 1e6}) {
        const double v = matsubara_integral(eps, zeta).value;
        CHECK(v >= prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("casimir_polder_energy") {
  CHECK(casimir_polder_energy(0.0, 1e-9) == 0.0);
  CHECK(rel_diff(casimir_polder_energy(au_volume_to_si(1.0), 1e-9), -5.59e-22) < 1e-3);
  CHECK(casimir_polder_energy(1e-30, 2e-8) == casimir_polder_energy(1e-30, 1e-8) / 16.0);
  CHECK_THROWS_AS(casimir_polder_energy(-1.0, 1e-8), DomainError);
}

TEST_CASE("free_energy: ideal metal with static alpha matches the geometric series") {
  for (auto [a, T] : {std::pair{3e-9, 300.0}, {1e-7, 50.0}, {1e-6, 300.0}, {1e-5, 1000.0}}) {
    const auto res = free_energy(request(make_static_alpha(he_alpha0), IdealMetal{}, a, T));
    const double tau = matsubara_zeta(1, a, T);
    const double expected = -constants::k_B * T * he_alpha0 / (8.0 * a * a * a) * ideal_static_bracket(tau);
    CAPTURE(a);
    CHECK(rel_diff(res.free_energy, expected) < 1e-9);
  }
}

TEST_CASE("free_energy bookkeeping") {
  const auto res = free_energy(request(he_oscillator(), make_plasma(au_omega_p), 3e-8, 300.0));
  double sum = res.classical_term;
  for (double c : res.contributions) sum += c;
  CHECK(rel_diff(sum, res.free_energy) < 1e-12);
  CHECK(res.contributions.size() == res.n_terms_used);
  CHECK(res.max_quad_nodes >= 64);
  CHECK(res.free_energy < 0.0);
  CHECK(res.warnings.empty());
  CHECK(rel_diff(res.classical_term, -constants::k_B * 300.0 * he_alpha0 / (4.0 * 2.7e-23)) < 1e-12);
  CHECK(res.normalized == res.free_energy / casimir_polder_energy(he_alpha0, 3e-8));
}

TEST_CASE("free_energy limits") {
  SUBCASE("zero temperature") {
    const auto req = request(make_static_alpha(he_alpha0), IdealMetal{}, 1e-6, 1.0);
    CHECK(std::abs(normalized_free_energy(req) - 1.0) < 1e-2);
  }
  SUBCASE("low-temperature expansion") {
    // Euler-Maclaurin on the Matsubara sum: F/E = 1 - tau^4/2160 + tau^6/15120 - O(tau^8)
    for (double a : {1e-8, 5e-8, 1e-7, 2e-7, 3e-7}) {
      const double T = 300.0;
      const double tau = matsubara_zeta(1, a, T);
      CAPTURE(tau);
      REQUIRE(tau < 0.6);
      const double expected = 1.0 - std::pow(tau, 4) / 2160.0 + std::pow(tau, 6) / 15120.0;
      const double ratio = normalized_free_energy(request(make_static_alpha(he_alpha0), IdealMetal{}, a, T));
      CHECK(std::abs(ratio - expected) < std::pow(tau, 8) / 2e5 + 1e-9);
    }
  }
  SUBCASE("classical") {
    for (const DielectricModel& wall : {DielectricModel{IdealMetal{}}, make_static_permittivity(3.84)}) {
      const auto res = free_energy(request(he_oscillator(), wall, 1e-5, 300.0));
      const double classical = -constants::k_B * 300.0 * he_alpha0 * f0(wall) / (4.0 * 1e-15);
      CHECK(rel_diff(res.free_energy, classical) < 1e-2);
    }
  }
  SUBCASE("thermal regime: normalized ratio grows linearly in a") {
    const auto wall = DielectricModel{IdealMetal{}};
    const double a1 = 5e-6, a2 = 1e-5;
    const double r1 = normalized_free_energy(request(make_static_alpha(he_alpha0), wall, a1, 300.0));
    const double r2 = normalized_free_energy(request(make_static_alpha(he_alpha0), wall, a2, 300.0));
    const double slope = std::log(r2 / r1) / std::log(a2 / a1);
    CHECK(std::abs(slope - 1.0) < 0.05);
  }
  SUBCASE("zero polarizability") {
    const auto res = free_energy(request(make_static_alpha(0.0), make_plasma(au_omega_p), 1e-7, 300.0));
    CHECK(res.free_energy == 0.0);
    CHECK_FALSE(std::signbit(res.free_energy));
    CHECK(std::isnan(res.normalized));
    CHECK_FALSE(res.warnings.empty());
    CHECK_THROWS_AS(normalized_free_energy(request(make_static_alpha(0.0), IdealMetal{}, 1e-7, 300.0)), DomainError);
  }
}

TEST_CASE("free_energy properties") {
  const std::vector<double> separations{3e-9, 1e-8, 3e-8, 1e-7, 3e-7, 1e-6, 3e-6, 1e-5};
  const std::vector<DielectricModel> walls{IdealMetal{}, make_plasma(au_omega_p), make_static_permittivity(3.84),
                                           make_ninham_parsegian({{1.5, ev_to_angular(12.0)}})};
  SUBCASE("negative and decreasing in magnitude with a") {
    for (const auto& wall : walls) {
      double prev = std::numeric_limits<double>::infinity();
      for (double a : separations) {
        const double f = free_energy(request(he_oscillator(), wall, a, 300.0)).free_energy;
        CHECK(f < 0.0);
        CHECK(std::abs(f) < prev);
        prev = std::abs(f);
      }
    }
  }
  SUBCASE("magnitude increases with T in the thermal regime") {
    for (double a : {5e-6, 1e-5}) {
      double prev = 0.0;
      for (double T : {300.0, 600.0, 1000.0}) {
        REQUIRE(matsubara_zeta(1, a, T) > 8.0);
        const double f = std::abs(free_energy(request(he_oscillator(), make_plasma(au_omega_p), a, T)).free_energy);
        CHECK(f > prev);
        prev = f;
      }
    }
  }
  SUBCASE("monotone in eps") {
    // Plasma walls with increasing omega_p are pointwise ordered in eps, and the ideal metal bounds them.
    for (double a : {3e-9, 1e-7, 5e-6}) {
      double prev = 0.0;
      for (const DielectricModel& wall :
           {make_plasma(0.3 * au_omega_p), make_plasma(au_omega_p), make_plasma(3.0 * au_omega_p), DielectricModel{IdealMetal{}}}) {
        const double f = std::abs(free_energy(request(he_oscillator(), wall, a, 300.0)).free_energy);
        CHECK(f >= prev);
        prev = f;
      }
    }
  }
  SUBCASE("deterministic") {
    const auto req = request(he_oscillator(), make_plasma(au_omega_p), 4.2e-8, 300.0);
    const double first = free_energy(req).free_energy;
    for (int i = 0; i < 3; ++i) CHECK(free_energy(req).free_energy == first);
  }
}

TEST_CASE("free_energy validation and warnings") {
  const auto atom = he_oscillator();
  CHECK_THROWS_AS(free_energy(request(atom, IdealMetal{}, 5e-10, 300.0)), DomainError);
  CHECK_THROWS_AS(free_energy(request(atom, IdealMetal{}, 2e-4, 300.0)), DomainError);
  CHECK_THROWS_AS(free_energy(request(atom, IdealMetal{}, 1e-7, 0.0)), DomainError);
  CHECK_FALSE(free_energy(request(atom, IdealMetal{}, 2e-9, 300.0)).warnings.empty());
  CHECK_FALSE(free_energy(request(atom, IdealMetal{}, 2e-5, 300.0)).warnings.empty());

  auto req = request(atom, make_plasma(au_omega_p), 3e-9, 300.0);
  req.tol.max_terms = 5;
  CHECK_THROWS_AS(free_energy(req), NumericalError);
  req.tol = {};
  req.tol.series_rel_tol = 1e-16;
  CHECK_THROWS_AS(free_energy(req), ConfigurationError);

  const double a0 = he_alpha0;
  const TabulatedAlpha short_table{std::make_shared<const AlphaTable>(
      std::vector<AlphaRow>{{0.0, a0}, {1e14, 0.99 * a0}, {2e14, 0.97 * a0}})};
  CHECK_FALSE(free_energy(request(short_table, IdealMetal{}, 1e-7, 300.0)).warnings.empty());
}

TEST_CASE("correction_factor") {
  const auto ref = request(he_oscillator(), make_plasma(au_omega_p), 1e-8, 300.0);
  CHECK(correction_factor(ref, ref) == 1.0);
  const auto ideal = request(he_oscillator(), IdealMetal{}, 1e-8, 300.0);
  CHECK(correction_factor(ref, ideal) > 1.0);
  auto moved = ideal;
  moved.separation = 2e-8;
  CHECK_THROWS_AS(correction_factor(ref, moved), UsageError);
  auto warmer = ideal;
  warmer.temperature = 310.0;
  CHECK_THROWS_AS(correction_factor(ref, warmer), UsageError);
}
