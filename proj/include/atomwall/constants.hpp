#pragma once

// Physical constants (CODATA 2018, SI) and the unit conversions used at the
// input boundary. Everything past parsing works in SI.

namespace atomwall::constants {

inline constexpr double k_B = 1.380649e-23;          // J/K
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double c = 299792458.0;             // m/s
inline constexpr double e = 1.602176634e-19;         // C
inline constexpr double m_e = 9.1093837015e-31;      // kg
inline constexpr double eps0 = 8.8541878128e-12;     // F/m
inline constexpr double hartree = 4.3597447222071e-18; // J
inline constexpr double bohr_radius = 5.29177210903e-11; // m

/// Atomic unit of polarizability volume, a_0^3.
inline constexpr double au_polarizability = bohr_radius * bohr_radius * bohr_radius;

/// Photon energy in eV to angular frequency in rad/s (e / hbar).
inline constexpr double eV_to_rad_per_s = e / hbar;

/// e^2 / (4 pi eps0 m_e): turns f / omega^2 into a polarizability volume (m^3).
inline constexpr double oscillator_prefactor =
    e * e / (4.0 * 3.14159265358979323846 * eps0 * m_e);

} // namespace atomwall::constants

namespace atomwall {

/// Photon energy (eV) to angular frequency (rad/s). Throws DomainError for x_eV < 0.
double ev_to_angular(double x_eV);

/// Polarizability in atomic units to a volume in m^3. Throws DomainError for x_au < 0.
double au_volume_to_si(double x_au);

} // namespace atomwall
