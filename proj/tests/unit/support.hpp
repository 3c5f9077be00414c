#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "atomwall/constants.hpp"
#include "atomwall/dielectric.hpp"

namespace testing {

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

inline std::filesystem::path data_path(const std::string& name) { return std::filesystem::path(ATOMWALL_TEST_DATA) / name; }

// Scratch directory removed at scope exit.
class TempDir {
public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("atomwall_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p;
  }

private:
  std::filesystem::path path_;
};

// n + ik = sqrt(eps) for a Drude metal.
inline std::vector<atomwall::OpticalRow> drude_rows(double omega_p, double nu, std::size_t count, double lo_eV,
                                                    double hi_eV) {
  std::vector<atomwall::OpticalRow> rows;
  for (std::size_t i = 0; i < count; ++i) {
    const double eV = lo_eV * std::pow(hi_eV / lo_eV, static_cast<double>(i) / static_cast<double>(count - 1));
    const double w = atomwall::ev_to_angular(eV);
    const std::complex<double> eps = 1.0 - omega_p * omega_p / (w * std::complex<double>(w, nu));
    const auto nk = std::sqrt(eps);
    rows.push_back({w, nk.real(), nk.imag()});
  }
  return rows;
}

// Damped Lorentz insulator: eps = 1 + C w0^2 / (w0^2 - w^2 - i g w).
inline std::vector<atomwall::OpticalRow> lorentz_rows(double strength, double omega0, double gamma, std::size_t count,
                                                      double lo_eV, double hi_eV) {
  std::vector<atomwall::OpticalRow> rows;
  for (std::size_t i = 0; i < count; ++i) {
    const double eV = lo_eV * std::pow(hi_eV / lo_eV, static_cast<double>(i) / static_cast<double>(count - 1));
    const double w = atomwall::ev_to_angular(eV);
    const std::complex<double> eps =
        1.0 + strength * omega0 * omega0 / std::complex<double>(omega0 * omega0 - w * w, -gamma * w);
    const auto nk = std::sqrt(eps);
    rows.push_back({w, nk.real(), nk.imag()});
  }
  return rows;
}

inline std::string rows_to_text(const std::vector<atomwall::OpticalRow>& rows) {
  std::string out = "# energy_eV n k\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", r.omega / atomwall::constants::eV_to_rad_per_s, r.n, r.k);
    out += buf;
  }
  return out;
}

} // namespace testing
