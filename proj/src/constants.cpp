#include "atomwall/constants.hpp"

#include "atomwall/error.hpp"

#include <cmath>
#include <string>

namespace atomwall {

double ev_to_angular(double x_eV) {
  if (!(x_eV >= 0.0) || !std::isfinite(x_eV))
    throw DomainError("photon energy must be finite and non-negative, got " + std::to_string(x_eV) + " eV");
  return x_eV * constants::eV_to_rad_per_s;
}

double au_volume_to_si(double x_au) {
  if (!(x_au >= 0.0) || !std::isfinite(x_au))
    throw DomainError("polarizability must be finite and non-negative, got " + std::to_string(x_au) + " a.u.");
  return x_au * constants::au_polarizability;
}

} // namespace atomwall
