#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "atomwall/dielectric.hpp"
#include "atomwall/polarizability.hpp"

namespace atomwall {

struct NumericalTolerances {
  double series_rel_tol = 1e-9;
  double quad_rel_tol = 1e-9;
  std::size_t max_terms = 1'000'000;
  std::size_t consecutive_small = 3;
  bool operator==(const NumericalTolerances&) const = default;
};

/// Throws ConfigurationError for non-positive values or series_rel_tol < 1e-14.
void validate(const NumericalTolerances& tol);

/// Separations accepted at all; outside the narrower validity window a warning is attached.
inline constexpr double min_separation = 1e-9;
inline constexpr double max_separation = 1e-4;
inline constexpr double validity_window_lo = 3e-9;
inline constexpr double validity_window_hi = 1e-5;

struct ComputationRequest {
  PolarizabilityModel atom;
  DielectricModel wall;
  double separation = 0.0;  // m
  double temperature = 0.0; // K
  NumericalTolerances tol;
  KKSettings kk;
};

struct FreeEnergyResult {
  double free_energy = 0.0;    // J, negative for attraction
  double classical_term = 0.0; // J, the l = 0 term
  std::vector<double> contributions; // J, the l >= 1 terms in order
  std::size_t n_terms_used = 0;      // number of l >= 1 terms summed
  std::size_t max_quad_nodes = 0;
  double normalized = 0.0; // free_energy / E(a); NaN when alpha(0) = 0
  std::vector<std::string> warnings;
};

/// zeta_l = 4 pi l k_B T a / (hbar c)
double matsubara_zeta(std::size_t l, double a, double T);

/// omega_c = c / (2a); the Matsubara frequency is xi_l = zeta_l * omega_c.
double characteristic_frequency(double a);

/// TM and TE reflection amplitudes at imaginary frequency, in the stable
/// rationalised forms. Require eps >= 1, y >= zeta >= 0, y > 0.
double reflection_par(double eps, double zeta, double y);
double reflection_perp(double eps, double zeta, double y);

struct IntegralResult {
  double value = 0.0;
  std::size_t nodes = 0; // integrand evaluations of the accepted estimate
};

/// int_zeta^inf dy e^{-y} [(2y^2 - zeta^2) r_par + zeta^2 r_perp], evaluated as
/// e^{-zeta} int_0^inf e^{-t} g(zeta + t) dt with Gauss-Laguerre rules of order
/// 32, 64, ..., 512 until consecutive estimates agree to quad_rel_tol. When the
/// branch point of the square root lies within 1 of the origin, or the sequence
/// stalls, [0, 2] is integrated adaptively and only the remainder with Laguerre
/// rules.
IntegralResult matsubara_integral(double eps, double zeta, double quad_rel_tol = 1e-9);

/// Closed form for r_par = r_perp = 1:  2 e^{-zeta} (zeta^2 + 2 zeta + 2).
double ideal_metal_integral(double zeta);

/// Free energy of the atom-wall system; see FreeEnergyResult.
FreeEnergyResult free_energy(const ComputationRequest& req);

/// E(a) = -3 hbar c alpha0 / (8 pi a^4), ideal metal at T = 0.
double casimir_polder_energy(double alpha0, double a);

/// free_energy / E(a). Throws DomainError when alpha(0) = 0.
double normalized_free_energy(const ComputationRequest& req);

/// F(variant) / F(reference). Throws UsageError when separation or temperature differ.
double correction_factor(const ComputationRequest& reference, const ComputationRequest& variant);

} // namespace atomwall
