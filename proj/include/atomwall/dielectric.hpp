#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "atomwall/interpolation.hpp"

namespace atomwall {

enum class MaterialKind { Metal, Dielectric };

std::string to_string(MaterialKind kind);

/// Low-frequency completion of metal data:
///   eps''(w) = omega_p^2 nu / (w (w^2 + nu^2)).
struct DrudeExtrapolation {
  double omega_p = 0.0; // rad/s
  double nu = 0.0;      // rad/s
  bool operator==(const DrudeExtrapolation&) const = default;
};

struct OpticalRow {
  double omega = 0.0; // rad/s
  double n = 0.0;
  double k = 0.0;
  bool operator==(const OpticalRow&) const = default;
};

/// Measured (omega, n, k) rows plus the completions used outside the measured range.
///
/// Inside the range n and k are interpolated log-log (linearly in log omega when a
/// neighbouring value is zero). Above the last row eps'' follows a C/omega^p tail
/// matched to the last row. Below the first row a metal uses the Drude
/// completion; a dielectric without one falls off linearly to zero, which keeps
/// eps''/omega integrable at omega = 0.
class OpticalTable {
public:
  static constexpr std::size_t min_rows = 8;

  /// Validates: >= 8 rows, omega > 0 and strictly increasing, n, k finite and >= 0,
  /// Drude parameters positive, tail exponent in [1, 10]. Throws ValidationError.
  OpticalTable(std::vector<OpticalRow> rows, std::optional<DrudeExtrapolation> low_ext,
               double tail_exponent = 3.0);

  const std::vector<OpticalRow>& rows() const { return rows_; }
  const std::optional<DrudeExtrapolation>& low_extrapolation() const { return low_ext_; }
  double tail_exponent() const { return tail_exponent_; }
  double omega_min() const { return rows_.front().omega; }
  double omega_max() const { return rows_.back().omega; }
  /// eps'' at the last row; the tail is  eps''_max * (omega_max / omega)^p.
  double tail_amplitude() const { return 2.0 * rows_.back().n * rows_.back().k; }

  /// 2 n k inside [omega_min, omega_max].
  double interpolated_eps_imag(double omega) const;

  bool operator==(const OpticalTable&) const = default;

private:
  std::vector<OpticalRow> rows_;
  std::optional<DrudeExtrapolation> low_ext_;
  double tail_exponent_ = 3.0;
};

struct KKSettings;

/// eps(i xi) reconstructed once on a log-spaced xi grid, interpolated monotonically
/// in between. Immutable after construction.
class PermittivityGrid {
public:
  PermittivityGrid(std::vector<double> xi, const std::vector<double>& eps);

  bool covers(double xi) const { return xi >= lo_ && xi <= hi_; }
  double operator()(double xi) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t size() const { return size_; }

private:
  MonotoneCubic interp_;
  bool log_excess_ = false; // interpolating log(eps - 1) rather than eps
  double lo_ = 0.0, hi_ = 0.0;
  std::size_t size_ = 0;
};

struct KKSettings {
  double rel_tol = 1e-6;
  std::size_t max_intervals = 20000;
  std::shared_ptr<const PermittivityGrid> cache_grid;
};

struct IdealMetal {
  bool operator==(const IdealMetal&) const = default;
};

struct Plasma {
  double omega_p = 0.0; // rad/s
  bool operator==(const Plasma&) const = default;
};

/// Returns eps(0) at every xi, not only at xi = 0.
struct StaticPermittivity {
  double eps_static = 1.0;
  bool operator==(const StaticPermittivity&) const = default;
};

struct NinhamParsegianTerm {
  double strength = 0.0; // C_j
  double omega = 0.0;    // rad/s
  bool operator==(const NinhamParsegianTerm&) const = default;
};

/// eps(i xi) = 1 + sum_j C_j / (1 + xi^2 / omega_j^2)
struct NinhamParsegian {
  std::vector<NinhamParsegianTerm> terms;
  bool operator==(const NinhamParsegian&) const = default;
};

struct TabulatedKK {
  std::shared_ptr<const OpticalTable> table;
  MaterialKind kind = MaterialKind::Metal;
  bool operator==(const TabulatedKK& other) const {
    return kind == other.kind && (table == other.table || (table && other.table && *table == *other.table));
  }
};

using DielectricModel = std::variant<IdealMetal, Plasma, StaticPermittivity, NinhamParsegian, TabulatedKK>;

/// Checked constructors. Each throws ConfigurationError on invalid parameters.
DielectricModel make_plasma(double omega_p);
DielectricModel make_static_permittivity(double eps_static);
DielectricModel make_ninham_parsegian(std::vector<NinhamParsegianTerm> terms);
/// A metal requires a Drude completion; a dielectric must have a finite xi = 0 transform.
DielectricModel make_tabulated(std::shared_ptr<const OpticalTable> table, MaterialKind kind);

void validate(const DielectricModel& model);
MaterialKind material_kind(const DielectricModel& model);
std::string model_name(const DielectricModel& model);

/// eps''(omega) for a table used as `kind`, including the completions.
/// Throws DomainError for omega <= 0 and ConfigurationError for a metal queried
/// below range without a Drude completion.
double eps_imag_part(const OpticalTable& table, double omega, MaterialKind kind = MaterialKind::Dielectric);

struct KKResult {
  double value = 1.0; // eps(i xi)
  double error = 0.0; // absolute error estimate of the table-range quadrature
  std::size_t intervals = 0;
};

/// eps(i xi) = 1 + (2/pi) int_0^inf w eps''(w) / (w^2 + xi^2) dw, split into the
/// completion below the table, adaptive quadrature over the table segments in
/// log w, and the power tail above it. Throws NumericalError if the interval
/// budget is exhausted.
KKResult kramers_kronig(const OpticalTable& table, MaterialKind kind, double xi, const KKSettings& settings = {});

/// eps(i xi) for every model except IdealMetal (DomainError). Metals require xi > 0.
double eps_iw(const DielectricModel& model, double xi, const KKSettings& settings = {});

/// Zero-frequency reflection factor: 1 for metals, (eps(0)-1)/(eps(0)+1) for dielectrics.
double f0(const DielectricModel& model, const KKSettings& settings = {});

/// Precomputes eps(i xi) on [xi_lo, xi_hi] with `per_decade` log-spaced points.
std::shared_ptr<const PermittivityGrid> build_permittivity_grid(const DielectricModel& model, double xi_lo,
                                                                double xi_hi, const KKSettings& settings,
                                                                std::size_t per_decade = 64);

} // namespace atomwall
