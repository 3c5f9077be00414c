#include "atomwall/lifshitz.hpp"

#include "atomwall/constants.hpp"
#include "atomwall/error.hpp"
#include "atomwall/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace atomwall {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline double r_par(double eps, double zeta, double y) {
  const double root = std::sqrt(y * y + zeta * zeta * (eps - 1.0));
  const double den = eps * y + root;
  return (eps - 1.0) * ((eps + 1.0) * y * y - zeta * zeta) / (den * den);
}

inline double r_perp(double eps, double zeta, double y) {
  const double root = std::sqrt(y * y + zeta * zeta * (eps - 1.0));
  const double den = root + y;
  return zeta * zeta * (eps - 1.0) / (den * den);
}

inline double integrand(double eps, double zeta, double y) {
  const double z2 = zeta * zeta;
  return (2.0 * y * y - z2) * r_par(eps, zeta, y) + z2 * r_perp(eps, zeta, y);
}

constexpr std::size_t first_order = 32;
constexpr std::size_t max_order = 512;
constexpr double split_point = 2.0;
// Below this distance of the branch point from the Laguerre origin the doubling
// sequence can stagnate before it converges.
constexpr double near_branch = 1.0;

struct LaguerreOutcome {
  double value = 0.0;
  std::size_t nodes = 0;
  bool converged = false;
};

// int_0^inf e^{-t} g(t) dt with order doubling.
template <class G>
LaguerreOutcome laguerre_doubling(const G& g, double rel_tol) {
  auto eval = [&](std::size_t order) {
    const auto& rule = quad::gauss_laguerre(order);
    double sum = 0.0;
    for (std::size_t i = rule.nodes.size(); i-- > 0;) {
      if (rule.weights[i] == 0.0) continue;
      sum += rule.weights[i] * g(rule.nodes[i]);
    }
    return sum;
  };
  LaguerreOutcome out;
  double previous = eval(first_order);
  out.nodes = first_order;
  for (std::size_t order = 2 * first_order; order <= max_order; order *= 2) {
    const double current = eval(order);
    out.nodes = order;
    out.value = current;
    if (std::abs(current - previous) <= rel_tol * std::abs(current)) {
      out.converged = true;
      return out;
    }
    previous = current;
  }
  return out;
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

bool is_ideal_metal(const DielectricModel& wall) { return std::holds_alternative<IdealMetal>(wall); }

void check_reflection_args(double eps, double zeta, double y) {
  if (!(eps >= 1.0) || !(zeta >= 0.0) || !(y >= zeta) || !(y > 0.0) || !std::isfinite(eps) ||
      !std::isfinite(y))
    throw DomainError("reflection coefficients need eps >= 1 and y >= zeta >= 0 with y > 0");
}

} // namespace

void validate(const NumericalTolerances& tol) {
  if (!(tol.series_rel_tol >= 1e-14) || !(tol.series_rel_tol < 1.0))
    throw ConfigurationError("series_rel_tol must lie in [1e-14, 1), got " + num(tol.series_rel_tol));
  if (!(tol.quad_rel_tol > 0.0) || !(tol.quad_rel_tol < 1.0))
    throw ConfigurationError("quad_rel_tol must lie in (0, 1), got " + num(tol.quad_rel_tol));
  if (tol.max_terms == 0) throw ConfigurationError("max_terms must be positive");
  if (tol.consecutive_small == 0) throw ConfigurationError("consecutive_small must be positive");
}

double matsubara_zeta(std::size_t l, double a, double T) {
  if (!(a > 0.0) || !(T > 0.0)) throw DomainError("Matsubara frequencies need a > 0 and T > 0");
  const double step = 4.0 * std::numbers::pi * constants::k_B * T * a / (constants::hbar * constants::c);
  return static_cast<double>(l) * step;
}

double characteristic_frequency(double a) {
  if (!(a > 0.0)) throw DomainError("separation must be positive");
  return constants::c / (2.0 * a);
}

double reflection_par(double eps, double zeta, double y) {
  check_reflection_args(eps, zeta, y);
  return r_par(eps, zeta, y);
}

double reflection_perp(double eps, double zeta, double y) {
  check_reflection_args(eps, zeta, y);
  return r_perp(eps, zeta, y);
}

double ideal_metal_integral(double zeta) {
  if (!(zeta >= 0.0)) throw DomainError("zeta must be >= 0");
  return 2.0 * std::exp(-zeta) * (zeta * zeta + 2.0 * zeta + 2.0);
}

IntegralResult matsubara_integral(double eps, double zeta, double quad_rel_tol) {
  if (!(eps >= 1.0) || !std::isfinite(eps)) throw DomainError("matsubara_integral needs finite eps >= 1");
  if (!(zeta >= 0.0) || !std::isfinite(zeta)) throw DomainError("matsubara_integral needs finite zeta >= 0");
  if (!(quad_rel_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (eps == 1.0) return {0.0, 0};

  const double damping = std::exp(-zeta);
  if (damping == 0.0) return {0.0, 0};

  auto g = [eps, zeta](double t) { return integrand(eps, zeta, zeta + t); };
  // The branch points of sqrt(y^2 + zeta^2 (eps - 1)) sit at t = -zeta +- i zeta sqrt(eps - 1).
  const double branch_distance = zeta * std::sqrt(eps);
  LaguerreOutcome direct;
  if (branch_distance >= near_branch) {
    direct = laguerre_doubling(g, quad_rel_tol);
    if (direct.converged) return {damping * direct.value, direct.nodes};
  }

  quad::AdaptiveOptions opts;
  opts.rel_tol = 0.1 * quad_rel_tol;
  opts.max_intervals = 4000;
  auto head = quad::integrate_adaptive([&](double t) { return std::exp(-t) * g(t); }, 0.0, split_point, opts);
  auto shifted = [&](double u) { return g(split_point + u); };
  auto tail = laguerre_doubling(shifted, quad_rel_tol);
  if (!head.converged || !tail.converged) {
    throw NumericalError("Matsubara integral did not converge",
                         "eps=" + num(eps) + " zeta=" + num(zeta) + " head_error=" + num(head.error) +
                             " tail_nodes=" + std::to_string(tail.nodes));
  }
  const double value = head.value + std::exp(-split_point) * tail.value;
  return {damping * value, head.evaluations + direct.nodes + tail.nodes};
}

double casimir_polder_energy(double alpha0, double a) {
  if (!(alpha0 >= 0.0)) throw DomainError("alpha0 must be >= 0");
  if (!(a > 0.0)) throw DomainError("separation must be positive");
  return -3.0 * constants::hbar * constants::c * alpha0 / (8.0 * std::numbers::pi * a * a * a * a);
}

FreeEnergyResult free_energy(const ComputationRequest& req) {
  const double a = req.separation;
  const double T = req.temperature;
  if (!std::isfinite(a) || a < min_separation || a > max_separation)
    throw DomainError("separation " + num(a) + " m outside the accepted range [1e-9, 1e-4] m");
  if (!std::isfinite(T) || !(T > 0.0)) throw DomainError("temperature must be positive, got " + num(T));
  validate(req.tol);
  validate(req.wall);

  FreeEnergyResult res;
  if (a < validity_window_lo || a > validity_window_hi)
    res.warnings.push_back("separation " + num(a) + " m is outside the 3 nm - 10 um validity window");

  const double alpha0 = static_alpha(req.atom);
  if (alpha0 == 0.0) res.warnings.push_back("static polarizability is zero; the free energy vanishes");
  const double f_zero = f0(req.wall, req.kk);
  const double prefactor = -constants::k_B * T / (8.0 * a * a * a);
  const double zeta_step = matsubara_zeta(1, a, T);
  const double omega_c = characteristic_frequency(a);
  const bool ideal = is_ideal_metal(req.wall);

  KKSettings kk = req.kk;
  if (std::holds_alternative<TabulatedKK>(req.wall) && !kk.cache_grid) {
    // Terms beyond zeta ~ 64 are below e^-64 of the leading ones.
    constexpr double zeta_cut = 64.0;
    constexpr double grid_threshold = 256.0;
    const double expected_terms = zeta_cut / zeta_step;
    if (expected_terms > grid_threshold)
      kk.cache_grid = build_permittivity_grid(req.wall, zeta_step * omega_c, zeta_cut * omega_c, req.kk);
  }

  const double classical_bracket = 2.0 * alpha0 * f_zero;
  res.classical_term = classical_bracket == 0.0 ? 0.0 : prefactor * classical_bracket;

  CompensatedSum bracket;
  bracket.add(classical_bracket);
  const double geometric_floor = std::exp(-zeta_step);
  double previous = 0.0;
  std::size_t small_run = 0;
  bool extrapolated_alpha = false;
  bool converged = false;

  for (std::size_t l = 1; l <= req.tol.max_terms; ++l) {
    const double zeta = static_cast<double>(l) * zeta_step;
    const double xi = zeta * omega_c;
    const auto alpha = evaluate_alpha(req.atom, xi);
    extrapolated_alpha = extrapolated_alpha || alpha.extrapolated;

    double integral = 0.0;
    if (ideal) {
      integral = ideal_metal_integral(zeta);
    } else {
      const auto r = matsubara_integral(eps_iw(req.wall, xi, kk), zeta, req.tol.quad_rel_tol);
      integral = r.value;
      res.max_quad_nodes = std::max(res.max_quad_nodes, r.nodes);
    }
    const double term = alpha.value * integral;
    bracket.add(term);
    res.contributions.push_back(prefactor * term);
    res.n_terms_used = l;

    // A term counts as small when it, together with a geometric estimate of
    // everything after it, is below the tolerance.
    double remaining = std::numeric_limits<double>::infinity();
    if (term == 0.0) {
      remaining = 0.0;
    } else {
      double ratio = previous > 0.0 ? term / previous : geometric_floor;
      ratio = std::max(ratio, geometric_floor);
      if (ratio < 1.0) remaining = term / (1.0 - ratio);
    }
    previous = term;

    if (remaining <= req.tol.series_rel_tol * std::abs(bracket.value())) {
      if (++small_run >= req.tol.consecutive_small) {
        converged = true;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  if (!converged) {
    throw NumericalError("Matsubara series did not converge",
                         "max_terms=" + std::to_string(req.tol.max_terms) + " zeta_1=" + num(zeta_step) +
                             " last_term=" + num(previous) + " bracket=" + num(bracket.value()));
  }
  if (extrapolated_alpha)
    res.warnings.push_back("polarizability table extrapolated with a 1/xi^2 tail above its last row");

  res.free_energy = bracket.value() == 0.0 ? 0.0 : prefactor * bracket.value();
  if (alpha0 > 0.0) {
    res.normalized = res.free_energy / casimir_polder_energy(alpha0, a);
  } else {
    res.normalized = std::numeric_limits<double>::quiet_NaN();
    res.warnings.push_back("normalized ratio undefined for zero static polarizability");
  }
  return res;
}

double normalized_free_energy(const ComputationRequest& req) {
  const double alpha0 = static_alpha(req.atom);
  if (!(alpha0 > 0.0)) throw DomainError("normalization needs a positive static polarizability");
  return free_energy(req).free_energy / casimir_polder_energy(alpha0, req.separation);
}

double correction_factor(const ComputationRequest& reference, const ComputationRequest& variant) {
  if (reference.separation != variant.separation || reference.temperature != variant.temperature)
    throw UsageError("correction factor needs reference and variant at the same separation and temperature");
  const double ref = free_energy(reference).free_energy;
  if (ref == 0.0) throw DomainError("reference free energy is zero");
  return free_energy(variant).free_energy / ref;
}

} // namespace atomwall
