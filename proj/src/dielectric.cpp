#include "atomwall/dielectric.hpp"

#include "atomwall/error.hpp"
#include "atomwall/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace atomwall {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// Geometric interpolation between a and b; linear in t when either end is zero.
double loglerp(double a, double b, double t) {
  if (a > 0.0 && b > 0.0) return a * std::pow(b / a, t);
  return a + (b - a) * t;
}

// omega_p^2 nu * int_0^W dw / ((w^2 + nu^2)(w^2 + xi^2)), xi > 0.
double drude_low_segment(const DrudeExtrapolation& d, double W, double xi) {
  const double nu = d.nu;
  auto g = [W](double x) { return std::atan(W / x) / x; };
  const double scale = d.omega_p * d.omega_p * nu;
  if (std::abs(xi - nu) <= 1e-4 * (xi + nu)) {
    const double m = 0.5 * (xi + nu);
    const double dg = -W / (m * (m * m + W * W)) - std::atan(W / m) / (m * m);
    return scale * (-dg) / (xi + nu);
  }
  return scale * (g(nu) - g(xi)) / ((xi - nu) * (xi + nu));
}

// s * int_0^W w^2 / (w^2 + xi^2) dw  for eps'' = s w.
double linear_low_segment(double slope, double W, double xi) {
  if (xi == 0.0) return slope * W;
  const double x = W / xi;
  double excess; // x - atan(x)
  if (x < 1e-2) {
    const double x2 = x * x;
    excess = x * x2 * (1.0 / 3.0 - x2 * (1.0 / 5.0 - x2 / 7.0));
  } else {
    excess = x - std::atan(x);
  }
  return slope * xi * excess;
}

} // namespace

std::string to_string(MaterialKind kind) { return kind == MaterialKind::Metal ? "metal" : "dielectric"; }

// --------------------------------------------------------------------------
// OpticalTable

OpticalTable::OpticalTable(std::vector<OpticalRow> rows, std::optional<DrudeExtrapolation> low_ext,
                           double tail_exponent)
    : rows_(std::move(rows)), low_ext_(low_ext), tail_exponent_(tail_exponent) {
  if (rows_.size() < min_rows)
    throw ValidationError("", "optical table needs at least " + std::to_string(min_rows) + " rows, got " +
                                  std::to_string(rows_.size()));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    const std::string where = "row " + std::to_string(i + 1);
    if (!positive_finite(r.omega)) throw ValidationError(where, "frequency must be positive and finite");
    if (!std::isfinite(r.n) || r.n < 0.0) throw ValidationError(where, "n must be finite and non-negative");
    if (!std::isfinite(r.k) || r.k < 0.0) throw ValidationError(where, "k must be finite and non-negative");
    if (i > 0 && !(r.omega > rows_[i - 1].omega))
      throw ValidationError(where, "frequencies must be strictly increasing");
  }
  if (low_ext_ && (!positive_finite(low_ext_->omega_p) || !positive_finite(low_ext_->nu)))
    throw ValidationError("", "Drude completion needs positive omega_p and nu");
  if (!(tail_exponent_ >= 1.0 && tail_exponent_ <= 10.0))
    throw ValidationError("", "tail exponent must lie in [1, 10], got " + num(tail_exponent_));
}

double OpticalTable::interpolated_eps_imag(double omega) const {
  if (!(omega >= omega_min() && omega <= omega_max()))
    throw DomainError("frequency " + num(omega) + " rad/s outside the table range");
  auto it = std::upper_bound(rows_.begin(), rows_.end(), omega,
                             [](double w, const OpticalRow& r) { return w < r.omega; });
  std::size_t i = static_cast<std::size_t>(it - rows_.begin());
  i = i == 0 ? 0 : i - 1;
  if (i + 1 >= rows_.size()) return 2.0 * rows_.back().n * rows_.back().k;
  const auto& a = rows_[i];
  const auto& b = rows_[i + 1];
  if (omega == a.omega) return 2.0 * a.n * a.k;
  const double t = std::log(omega / a.omega) / std::log(b.omega / a.omega);
  return 2.0 * loglerp(a.n, b.n, t) * loglerp(a.k, b.k, t);
}

double eps_imag_part(const OpticalTable& table, double omega, MaterialKind kind) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw DomainError("eps'' requires a positive finite frequency, got " + num(omega));
  if (omega > table.omega_max())
    return table.tail_amplitude() * std::pow(table.omega_max() / omega, table.tail_exponent());
  if (omega >= table.omega_min()) return table.interpolated_eps_imag(omega);

  if (const auto& d = table.low_extrapolation()) {
    return d->omega_p * d->omega_p * d->nu / (omega * (omega * omega + d->nu * d->nu));
  }
  if (kind == MaterialKind::Metal)
    throw ConfigurationError("metal optical table queried below its range without a Drude completion");
  const auto& first = table.rows().front();
  return 2.0 * first.n * first.k * omega / first.omega;
}

// --------------------------------------------------------------------------
// Kramers-Kronig

KKResult kramers_kronig(const OpticalTable& table, MaterialKind kind, double xi, const KKSettings& settings) {
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw DomainError("imaginary frequency must be finite and >= 0");
  if (!(settings.rel_tol > 0.0 && settings.rel_tol <= 1e-2))
    throw ConfigurationError("KK rel_tol must lie in (0, 1e-2], got " + num(settings.rel_tol));

  const double W_lo = table.omega_min();
  const double W_hi = table.omega_max();

  double low = 0.0;
  if (const auto& d = table.low_extrapolation()) {
    if (xi == 0.0)
      throw DomainError("the zero-frequency transform diverges with a Drude completion");
    low = drude_low_segment(*d, W_lo, xi);
  } else if (kind == MaterialKind::Metal) {
    throw ConfigurationError("metal optical table needs a Drude low-frequency completion");
  } else {
    const auto& first = table.rows().front();
    low = linear_low_segment(2.0 * first.n * first.k / first.omega, W_lo, xi);
  }

  // Power tail: eps''_max int_0^1 u^{p-1} / (1 + s^2 u^2) du with w = W_hi / u.
  double tail = 0.0;
  if (table.tail_amplitude() > 0.0) {
    const double s = xi / W_hi;
    const double p = table.tail_exponent();
    auto f = [s, p](double u) { return std::pow(u, p - 1.0) / (1.0 + s * s * u * u); };
    quad::AdaptiveOptions opts;
    opts.rel_tol = 1e-12;
    auto est = quad::integrate_adaptive(f, 0.0, 1.0, opts);
    tail = table.tail_amplitude() * est.value;
  }

  // Table range in u = ln w:  int w^2 eps''(w) / (w^2 + xi^2) du.
  const auto& rows = table.rows();
  std::vector<double> breaks(rows.size());
  std::transform(rows.begin(), rows.end(), breaks.begin(), [](const OpticalRow& r) { return std::log(r.omega); });
  auto integrand = [&](double u) {
    const double w = std::clamp(std::exp(u), W_lo, W_hi);
    const double ratio = xi / w;
    return table.interpolated_eps_imag(w) / (1.0 + ratio * ratio);
  };
  quad::AdaptiveOptions opts;
  opts.rel_tol = 0.5 * settings.rel_tol;
  opts.abs_tol = 0.5 * settings.rel_tol * (std::abs(low) + std::abs(tail));
  opts.max_intervals = std::max(settings.max_intervals, rows.size() + 1);
  auto est = quad::integrate_adaptive(integrand, breaks, opts);
  if (!est.converged) {
    throw NumericalError("Kramers-Kronig quadrature did not converge",
                         "xi=" + num(xi) + " intervals=" + std::to_string(est.intervals) +
                             " estimate=" + num(est.value) + " error=" + num(est.error));
  }

  KKResult res;
  res.value = 1.0 + (2.0 / std::numbers::pi) * (low + est.value + tail);
  res.error = (2.0 / std::numbers::pi) * est.error;
  res.intervals = est.intervals;
  return res;
}

// --------------------------------------------------------------------------
// PermittivityGrid

PermittivityGrid::PermittivityGrid(std::vector<double> xi, const std::vector<double>& eps) {
  if (xi.size() < 2 || xi.size() != eps.size()) throw DomainError("permittivity grid needs >= 2 points");
  log_excess_ = std::all_of(eps.begin(), eps.end(), [](double e) { return e > 1.0; });
  std::vector<double> x(xi.size()), y(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (!(xi[i] > 0.0)) throw DomainError("permittivity grid frequencies must be positive");
    x[i] = std::log(xi[i]);
    y[i] = log_excess_ ? std::log(eps[i] - 1.0) : eps[i];
  }
  lo_ = xi.front();
  hi_ = xi.back();
  size_ = xi.size();
  interp_ = MonotoneCubic(std::move(x), std::move(y));
}

double PermittivityGrid::operator()(double xi) const {
  const double v = interp_(std::clamp(std::log(xi), interp_.front(), interp_.back()));
  return log_excess_ ? 1.0 + std::exp(v) : v;
}

std::shared_ptr<const PermittivityGrid> build_permittivity_grid(const DielectricModel& model, double xi_lo,
                                                                double xi_hi, const KKSettings& settings,
                                                                std::size_t per_decade) {
  if (!(xi_lo > 0.0 && xi_hi > xi_lo)) throw DomainError("permittivity grid needs 0 < xi_lo < xi_hi");
  const double decades = std::log10(xi_hi / xi_lo);
  const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(decades * static_cast<double>(per_decade))) + 1);
  KKSettings direct = settings;
  direct.cache_grid.reset();
  std::vector<double> xi(n), eps(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    xi[i] = i + 1 == n ? xi_hi : xi_lo * std::pow(xi_hi / xi_lo, t);
    eps[i] = eps_iw(model, xi[i], direct);
  }
  return std::make_shared<const PermittivityGrid>(std::move(xi), eps);
}

// --------------------------------------------------------------------------
// Models

DielectricModel make_plasma(double omega_p) {
  DielectricModel m = Plasma{omega_p};
  validate(m);
  return m;
}

DielectricModel make_static_permittivity(double eps_static) {
  DielectricModel m = StaticPermittivity{eps_static};
  validate(m);
  return m;
}

DielectricModel make_ninham_parsegian(std::vector<NinhamParsegianTerm> terms) {
  DielectricModel m = NinhamParsegian{std::move(terms)};
  validate(m);
  return m;
}

DielectricModel make_tabulated(std::shared_ptr<const OpticalTable> table, MaterialKind kind) {
  DielectricModel m = TabulatedKK{std::move(table), kind};
  validate(m);
  const auto& tab = std::get<TabulatedKK>(m);
  if (kind == MaterialKind::Dielectric && !tab.table->low_extrapolation()) {
    // The zero-frequency transform must be finite for f(0).
    const double eps_zero = kramers_kronig(*tab.table, kind, 0.0).value;
    if (!std::isfinite(eps_zero))
      throw ConfigurationError("dielectric optical table has a divergent zero-frequency transform");
  }
  return m;
}

void validate(const DielectricModel& model) {
  std::visit(overloaded{
                 [](const IdealMetal&) {},
                 [](const Plasma& p) {
                   if (!positive_finite(p.omega_p))
                     throw ConfigurationError("plasma frequency must be positive, got " + num(p.omega_p));
                 },
                 [](const StaticPermittivity& s) {
                   if (!std::isfinite(s.eps_static) || s.eps_static < 1.0)
                     throw ConfigurationError("static permittivity must be >= 1, got " + num(s.eps_static));
                 },
                 [](const NinhamParsegian& np) {
                   if (np.terms.empty()) throw ConfigurationError("Ninham-Parsegian model needs at least one term");
                   for (const auto& t : np.terms)
                     if (!positive_finite(t.strength) || !positive_finite(t.omega))
                       throw ConfigurationError("Ninham-Parsegian terms need C_j > 0 and omega_j > 0");
                 },
                 [](const TabulatedKK& t) {
                   if (!t.table) throw ConfigurationError("tabulated wall has no optical table");
                   if (t.kind == MaterialKind::Metal && !t.table->low_extrapolation())
                     throw ConfigurationError("metal optical table needs Drude completion parameters (omega_p, nu)");
                 },
             },
             model);
}

MaterialKind material_kind(const DielectricModel& model) {
  return std::visit(overloaded{
                        [](const IdealMetal&) { return MaterialKind::Metal; },
                        [](const Plasma&) { return MaterialKind::Metal; },
                        [](const StaticPermittivity&) { return MaterialKind::Dielectric; },
                        [](const NinhamParsegian&) { return MaterialKind::Dielectric; },
                        [](const TabulatedKK& t) { return t.kind; },
                    },
                    model);
}

std::string model_name(const DielectricModel& model) {
  return std::visit(overloaded{
                        [](const IdealMetal&) { return std::string("ideal_metal"); },
                        [](const Plasma&) { return std::string("plasma"); },
                        [](const StaticPermittivity&) { return std::string("static"); },
                        [](const NinhamParsegian&) { return std::string("ninham_parsegian"); },
                        [](const TabulatedKK&) { return std::string("tabulated"); },
                    },
                    model);
}

double eps_iw(const DielectricModel& model, double xi, const KKSettings& settings) {
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw DomainError("imaginary frequency must be finite and >= 0");
  if (xi == 0.0 && material_kind(model) == MaterialKind::Metal)
    throw DomainError("metal permittivity diverges at xi = 0; use f0 for the zero-frequency term");

  return std::visit(
      overloaded{
          [](const IdealMetal&) -> double {
            throw DomainError("ideal metal has no finite permittivity; it is evaluated in closed form");
          },
          [xi](const Plasma& p) { return 1.0 + (p.omega_p / xi) * (p.omega_p / xi); },
          [](const StaticPermittivity& s) { return s.eps_static; },
          [xi](const NinhamParsegian& np) {
            double eps = 1.0;
            for (const auto& t : np.terms) {
              const double r = xi / t.omega;
              eps += t.strength / (1.0 + r * r);
            }
            return eps;
          },
          [xi, &settings](const TabulatedKK& t) {
            if (!t.table) throw ConfigurationError("tabulated wall has no optical table");
            if (settings.cache_grid && settings.cache_grid->covers(xi)) return (*settings.cache_grid)(xi);
            return kramers_kronig(*t.table, t.kind, xi, settings).value;
          },
      },
      model);
}

double f0(const DielectricModel& model, const KKSettings& settings) {
  validate(model);
  if (material_kind(model) == MaterialKind::Metal) return 1.0;
  double eps_zero = 1.0;
  if (const auto* t = std::get_if<TabulatedKK>(&model)) {
    if (t->table->low_extrapolation())
      throw ConfigurationError("dielectric optical table with a Drude completion has a divergent xi = 0 transform");
    KKSettings direct = settings;
    direct.cache_grid.reset();
    eps_zero = kramers_kronig(*t->table, t->kind, 0.0, direct).value;
    if (!std::isfinite(eps_zero)) throw ConfigurationError("zero-frequency transform diverges");
  } else {
    eps_zero = eps_iw(model, 0.0, settings);
  }
  return (eps_zero - 1.0) / (eps_zero + 1.0);
}

} // namespace atomwall
