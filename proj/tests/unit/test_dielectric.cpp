#include <doctest.h>

#include <memory>

#include "atomwall/dielectric.hpp"
#include "atomwall/error.hpp"
#include "support.hpp"

using namespace atomwall;
using testing::rel_diff;

namespace {

constexpr double omega_p = 1.37e16;
constexpr double nu = 5e13;

std::shared_ptr<const OpticalTable> drude_table(std::size_t count = 500) {
  return std::make_shared<const OpticalTable>(testing::drude_rows(omega_p, nu, count, 1e-3, 1e4),
                                              DrudeExtrapolation{omega_p, nu}, 3.0);
}

double drude_exact(double xi) { return 1.0 + omega_p * omega_p / (xi * (xi + nu)); }

struct Lorentz {
  double strength = 2.84;
  double omega0 = ev_to_angular(10.0);
  double gamma = ev_to_angular(2.0);
  double exact(double xi) const { return 1.0 + strength * omega0 * omega0 / (omega0 * omega0 + xi * xi + gamma * xi); }
};

std::shared_ptr<const OpticalTable> lorentz_table(const Lorentz& l) {
  return std::make_shared<const OpticalTable>(testing::lorentz_rows(l.strength, l.omega0, l.gamma, 1500, 1e-3, 1e4),
                                              std::nullopt, 3.0);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> xi;
  for (int i = 0; i < n; ++i) xi.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return xi;
}

} // namespace

TEST_CASE("OpticalTable validation") {
  auto rows = testing::drude_rows(omega_p, nu, 20, 0.01, 10.0);
  CHECK_NOTHROW(OpticalTable(rows, std::nullopt));

  CHECK_THROWS_AS(OpticalTable({rows.begin(), rows.begin() + 7}, std::nullopt), ValidationError);
  auto bad = rows;
  bad[4].k = -1.0;
  CHECK_THROWS_AS(OpticalTable(bad, std::nullopt), ValidationError);
  bad = rows;
  std::swap(bad[3], bad[4]);
  CHECK_THROWS_AS(OpticalTable(bad, std::nullopt), ValidationError);
  bad = rows;
  bad[2].n = std::nan("");
  CHECK_THROWS_AS(OpticalTable(bad, std::nullopt), ValidationError);
  CHECK_THROWS_AS(OpticalTable(rows, DrudeExtrapolation{-1.0, nu}), ValidationError);
  CHECK_THROWS_AS(OpticalTable(rows, std::nullopt, 0.5), ValidationError);
}

TEST_CASE("eps_imag_part") {
  const auto table = drude_table();
  const auto& rows = table->rows();

  SUBCASE("node values are exactly 2nk") {
    for (std::size_t i : {1u, 100u, 250u, 498u}) CHECK(eps_imag_part(*table, rows[i].omega) == 2.0 * rows[i].n * rows[i].k);
  }
  SUBCASE("omega = nu inside the table") {
    REQUIRE(nu > table->omega_min());
    CHECK(rel_diff(eps_imag_part(*table, nu, MaterialKind::Metal), omega_p * omega_p / (2.0 * nu * nu)) < 1e-4);
  }
  SUBCASE("Drude completion below the table") {
    const OpticalTable high(testing::drude_rows(omega_p, nu, 50, 0.1, 100.0), DrudeExtrapolation{omega_p, nu});
    REQUIRE(nu < high.omega_min());
    CHECK(rel_diff(eps_imag_part(high, nu, MaterialKind::Metal), omega_p * omega_p / (2.0 * nu * nu)) < 1e-14);
  }
  SUBCASE("power tail is continuous at the last row") {
    const double top = table->omega_max();
    const double at = eps_imag_part(*table, top);
    CHECK(rel_diff(eps_imag_part(*table, top * (1.0 + 1e-12)), at) < 1e-9);
    CHECK(rel_diff(eps_imag_part(*table, 2.0 * top), at / 8.0) < 1e-12);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(eps_imag_part(*table, 0.0), DomainError);
    CHECK_THROWS_AS(eps_imag_part(*table, -1.0), DomainError);
    const OpticalTable bare(testing::drude_rows(omega_p, nu, 20, 0.01, 10.0), std::nullopt);
    CHECK_THROWS_AS(eps_imag_part(bare, ev_to_angular(1e-3), MaterialKind::Metal), ConfigurationError);
  }
  SUBCASE("transparent medium") {
    std::vector<OpticalRow> rows0;
    for (int i = 0; i < 10; ++i) rows0.push_back({ev_to_angular(1.0 + i), 1.5, 0.0});
    const OpticalTable clear(rows0, std::nullopt);
    for (double eV : {1.0, 2.5, 7.3, 10.0}) CHECK(eps_imag_part(clear, ev_to_angular(eV)) == 0.0);
  }
}

TEST_CASE("eps_iw closed-form models") {
  CHECK(eps_iw(make_plasma(omega_p), omega_p) == 2.0);
  CHECK(eps_iw(make_static_permittivity(3.84), 1e15) == 3.84);
  CHECK(eps_iw(make_static_permittivity(3.84), 0.0) == 3.84);

  SUBCASE("plasma identity xi sqrt(eps - 1) = omega_p") {
    const auto m = make_plasma(omega_p);
    for (double xi : log_grid(1e12, 1e18, 61)) {
      // forming eps - 1 costs one rounding of eps, amplified by eps / (eps - 1)
      const double e = eps_iw(m, xi);
      const double bound = 4.0 * std::numeric_limits<double>::epsilon() * e / (e - 1.0);
      CHECK(rel_diff(xi * std::sqrt(e - 1.0), omega_p) < bound);
    }
  }
  SUBCASE("single Ninham-Parsegian term") {
    const double c = 2.1, w = 2.0e16;
    const auto m = make_ninham_parsegian({{c, w}});
    for (double xi : log_grid(1e12, 1e18, 61))
      CHECK(rel_diff(eps_iw(m, xi), 1.0 + c / (1.0 + xi * xi / (w * w))) <= 4.0 * std::numeric_limits<double>::epsilon());
    CHECK(eps_iw(m, 0.0) == 1.0 + c);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(eps_iw(IdealMetal{}, 1e15), DomainError);
    CHECK_THROWS_AS(eps_iw(make_plasma(omega_p), 0.0), DomainError);
    CHECK_THROWS_AS(eps_iw(make_plasma(omega_p), -1.0), DomainError);
    CHECK_THROWS_AS(make_plasma(0.0), ConfigurationError);
    CHECK_THROWS_AS(make_static_permittivity(0.5), ConfigurationError);
    CHECK_THROWS_AS(make_ninham_parsegian({}), ConfigurationError);
    CHECK_THROWS_AS(make_ninham_parsegian({{-1.0, 1e16}}), ConfigurationError);
  }
}

TEST_CASE("material kinds") {
  CHECK(material_kind(IdealMetal{}) == MaterialKind::Metal);
  CHECK(material_kind(make_plasma(omega_p)) == MaterialKind::Metal);
  CHECK(material_kind(make_static_permittivity(3.84)) == MaterialKind::Dielectric);
  CHECK(material_kind(make_ninham_parsegian({{1.0, 1e16}})) == MaterialKind::Dielectric);
  CHECK(material_kind(make_tabulated(drude_table(40), MaterialKind::Metal)) == MaterialKind::Metal);
}

TEST_CASE("f0") {
  CHECK(f0(IdealMetal{}) == 1.0);
  CHECK(f0(make_plasma(omega_p)) == 1.0);
  CHECK(std::abs(f0(make_static_permittivity(3.84)) - 0.58678) < 1e-5);
  CHECK(f0(make_static_permittivity(1.0)) == 0.0);
  CHECK(f0(make_ninham_parsegian({{2.84, 1e16}})) == doctest::Approx(2.84 / 4.84).epsilon(1e-15));
  CHECK(f0(make_tabulated(drude_table(40), MaterialKind::Metal)) == 1.0);

  const Lorentz l;
  const double eps0 = l.exact(0.0);
  const double f = f0(make_tabulated(lorentz_table(l), MaterialKind::Dielectric));
  CHECK(f >= 0.0);
  CHECK(f < 1.0);
  // a 1e-3 relative error in eps(0) moves f(0) by 2 eps0 1e-3 / (eps0 + 1)^2
  CHECK(std::abs(f - (eps0 - 1.0) / (eps0 + 1.0)) < 2.0 * eps0 * 1e-3 / ((eps0 + 1.0) * (eps0 + 1.0)));
}

TEST_CASE("Kramers-Kronig: Drude oracle") {
  const auto m = make_tabulated(drude_table(), MaterialKind::Metal);
  double worst = 0.0;
  for (double xi : log_grid(1e13, 1e17, 41)) worst = std::max(worst, rel_diff(eps_iw(m, xi), drude_exact(xi)));
  CHECK(worst < 1e-3);
  CHECK(rel_diff(eps_iw(m, nu), 1.0 + omega_p * omega_p / (2.0 * nu * nu)) < 1e-3);
}

TEST_CASE("Kramers-Kronig: Lorentz insulator oracle") {
  const Lorentz l;
  const auto m = make_tabulated(lorentz_table(l), MaterialKind::Dielectric);
  for (double xi : log_grid(1e12, 1e18, 25)) {
    CAPTURE(xi);
    CHECK(rel_diff(eps_iw(m, xi), l.exact(xi)) < 1e-3);
  }
}

TEST_CASE("Kramers-Kronig respects its tolerance setting") {
  const auto table = drude_table(200);
  KKSettings loose;
  loose.rel_tol = 1e-3;
  KKSettings tight;
  tight.rel_tol = 1e-9;
  const auto a = kramers_kronig(*table, MaterialKind::Metal, 3e15, loose);
  const auto b = kramers_kronig(*table, MaterialKind::Metal, 3e15, tight);
  CHECK(b.intervals >= a.intervals);
  CHECK(rel_diff(a.value, b.value) < 1e-3);
  KKSettings invalid;
  invalid.rel_tol = 0.5;
  CHECK_THROWS_AS(kramers_kronig(*table, MaterialKind::Metal, 3e15, invalid), ConfigurationError);
  CHECK_THROWS_AS(kramers_kronig(*table, MaterialKind::Metal, 0.0), DomainError);
}

TEST_CASE("eps_iw is >= 1 and non-increasing for every model") {
  const Lorentz l;
  const std::vector<DielectricModel> models{
      make_plasma(omega_p),
      make_static_permittivity(3.84),
      make_ninham_parsegian({{1.2, 2e15}, {0.9, 3e16}}),
      make_tabulated(drude_table(), MaterialKind::Metal),
      make_tabulated(lorentz_table(l), MaterialKind::Dielectric),
  };
  for (const auto& m : models) {
    CAPTURE(model_name(m));
    double prev = std::numeric_limits<double>::infinity();
    for (double xi : log_grid(1e11, 1e19, 161)) {
      const double e = eps_iw(m, xi);
      CHECK(e >= 1.0);
      CHECK(e <= prev * (1.0 + 1e-12));
      prev = e;
    }
  }
}

TEST_CASE("permittivity grid cache") {
  const auto m = make_tabulated(drude_table(), MaterialKind::Metal);
  KKSettings kk;
  kk.cache_grid = build_permittivity_grid(m, 1e13, 1e17, kk);
  REQUIRE(kk.cache_grid);
  CHECK(kk.cache_grid->covers(1e13));
  CHECK(kk.cache_grid->covers(1e17));
  CHECK_FALSE(kk.cache_grid->covers(2e17));
  CHECK(kk.cache_grid->size() >= 4 * 64);
  for (double xi : log_grid(1.3e13, 0.9e17, 57)) CHECK(rel_diff(eps_iw(m, xi, kk), eps_iw(m, xi)) < 1e-5);
}
