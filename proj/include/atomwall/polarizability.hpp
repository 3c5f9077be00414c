#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "atomwall/interpolation.hpp"

namespace atomwall {

// Polarizabilities are volumes in m^3 (alpha_SI / 4 pi eps0), so k_B T alpha / a^3
// is an energy.

struct Oscillator {
  double strength = 0.0; // f_0n
  double omega = 0.0;    // rad/s
  bool operator==(const Oscillator&) const = default;
};

/// alpha(i xi) = e^2/(4 pi eps0 m_e) * sum_n f_0n / (omega_0n^2 + xi^2)
class OscillatorSet {
public:
  /// Throws ConfigurationError unless non-empty with positive strengths and frequencies.
  explicit OscillatorSet(std::vector<Oscillator> entries);

  const std::vector<Oscillator>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double alpha(double xi) const;
  double static_alpha() const { return alpha(0.0); }
  /// lim xi^2 alpha(i xi) = e^2/(4 pi eps0 m_e) * sum f_0n.
  double high_frequency_coefficient() const;

  bool operator==(const OscillatorSet&) const = default;

private:
  std::vector<Oscillator> entries_;
};

struct AlphaRow {
  double xi = 0.0;    // rad/s
  double alpha = 0.0; // m^3
  bool operator==(const AlphaRow&) const = default;
};

/// Tabulated alpha(i xi). The first row must be xi = 0; values positive and
/// non-increasing. Above the last row alpha follows alpha_last (xi_last / xi)^2.
class AlphaTable {
public:
  explicit AlphaTable(std::vector<AlphaRow> rows);

  const std::vector<AlphaRow>& rows() const { return rows_; }
  double xi_max() const { return rows_.back().xi; }
  double alpha(double xi) const;
  bool operator==(const AlphaTable& other) const { return rows_ == other.rows_; }

private:
  std::vector<AlphaRow> rows_;
  MonotoneCubic interp_;
};

struct StaticAlpha {
  double alpha0 = 0.0;
  bool operator==(const StaticAlpha&) const = default;
};

struct Oscillators {
  OscillatorSet set;
  bool operator==(const Oscillators&) const = default;
};

struct TabulatedAlpha {
  std::shared_ptr<const AlphaTable> table;
  bool operator==(const TabulatedAlpha& other) const {
    return table == other.table || (table && other.table && *table == *other.table);
  }
};

using PolarizabilityModel = std::variant<StaticAlpha, Oscillators, TabulatedAlpha>;

/// alpha0 >= 0; zero is accepted and yields a vanishing free energy.
PolarizabilityModel make_static_alpha(double alpha0);

std::string model_name(const PolarizabilityModel& model);

struct AlphaValue {
  double value = 0.0;
  bool extrapolated = false; // tabulated model queried above its last row
};

/// alpha(i xi) with the extrapolation flag. Throws DomainError for xi < 0.
AlphaValue evaluate_alpha(const PolarizabilityModel& model, double xi);

double alpha_iw(const PolarizabilityModel& model, double xi);

double static_alpha(const PolarizabilityModel& model);

/// Single oscillator with the same alpha(0) and the same high-frequency
/// coefficient C_inf:  omega_0 = sqrt(C_inf / alpha(0)),  f_0 = C_inf / prefactor.
/// Throws UsageError for a static model.
OscillatorSet fit_single_oscillator(const PolarizabilityModel& model);

} // namespace atomwall
