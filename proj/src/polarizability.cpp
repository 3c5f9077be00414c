#include "atomwall/polarizability.hpp"

#include "atomwall/constants.hpp"
#include "atomwall/error.hpp"

#include <cmath>
#include <string>

namespace atomwall {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }
} // namespace

OscillatorSet::OscillatorSet(std::vector<Oscillator> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ConfigurationError("oscillator set needs at least one oscillator");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!positive_finite(entries_[i].strength) || !positive_finite(entries_[i].omega))
      throw ConfigurationError("oscillator " + std::to_string(i + 1) + " needs positive strength and frequency");
  }
  if (!positive_finite(static_alpha())) throw ConfigurationError("oscillator set has no finite static polarizability");
}

double OscillatorSet::alpha(double xi) const {
  double sum = 0.0;
  for (const auto& o : entries_) sum += o.strength / (o.omega * o.omega + xi * xi);
  return constants::oscillator_prefactor * sum;
}

double OscillatorSet::high_frequency_coefficient() const {
  double sum = 0.0;
  for (const auto& o : entries_) sum += o.strength;
  return constants::oscillator_prefactor * sum;
}

AlphaTable::AlphaTable(std::vector<AlphaRow> rows) : rows_(std::move(rows)) {
  if (rows_.size() < 2) throw ValidationError("", "polarizability table needs at least two rows");
  if (rows_.front().xi != 0.0) throw ValidationError("row 1", "polarizability table must start at xi = 0");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::string where = "row " + std::to_string(i + 1);
    if (!positive_finite(rows_[i].alpha)) throw ValidationError(where, "polarizability must be positive");
    if (i > 0) {
      if (!(rows_[i].xi > rows_[i - 1].xi)) throw ValidationError(where, "frequencies must be strictly increasing");
      if (rows_[i].alpha > rows_[i - 1].alpha) throw ValidationError(where, "polarizability must be non-increasing");
    }
    x.push_back(rows_[i].xi);
    y.push_back(rows_[i].alpha);
  }
  interp_ = MonotoneCubic(std::move(x), std::move(y));
}

double AlphaTable::alpha(double xi) const {
  if (xi > xi_max()) {
    const double r = xi_max() / xi;
    return rows_.back().alpha * r * r;
  }
  return interp_(xi);
}

PolarizabilityModel make_static_alpha(double alpha0) {
  if (!std::isfinite(alpha0) || alpha0 < 0.0)
    throw ConfigurationError("static polarizability must be finite and >= 0");
  return StaticAlpha{alpha0};
}

std::string model_name(const PolarizabilityModel& model) {
  return std::visit(overloaded{
                        [](const StaticAlpha&) { return std::string("static"); },
                        [](const Oscillators& o) {
                          return o.set.size() == 1 ? std::string("single_oscillator") : std::string("oscillators");
                        },
                        [](const TabulatedAlpha&) { return std::string("tabulated"); },
                    },
                    model);
}

AlphaValue evaluate_alpha(const PolarizabilityModel& model, double xi) {
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw DomainError("polarizability frequency must be finite and >= 0");
  return std::visit(overloaded{
                        [](const StaticAlpha& s) { return AlphaValue{s.alpha0, false}; },
                        [xi](const Oscillators& o) { return AlphaValue{o.set.alpha(xi), false}; },
                        [xi](const TabulatedAlpha& t) {
                          if (!t.table) throw ConfigurationError("tabulated polarizability has no table");
                          return AlphaValue{t.table->alpha(xi), xi > t.table->xi_max()};
                        },
                    },
                    model);
}

double alpha_iw(const PolarizabilityModel& model, double xi) { return evaluate_alpha(model, xi).value; }

double static_alpha(const PolarizabilityModel& model) { return alpha_iw(model, 0.0); }

OscillatorSet fit_single_oscillator(const PolarizabilityModel& model) {
  return std::visit(overloaded{
                        [](const StaticAlpha&) -> OscillatorSet {
                          throw UsageError("a static polarizability carries no spectral information to fit");
                        },
                        [](const Oscillators& o) {
                          if (o.set.size() == 1) return o.set;
                          const double c_inf = o.set.high_frequency_coefficient();
                          const double a0 = o.set.static_alpha();
                          const double omega = std::sqrt(c_inf / a0);
                          double strength = 0.0;
                          for (const auto& e : o.set.entries()) strength += e.strength;
                          return OscillatorSet({{strength, omega}});
                        },
                        [](const TabulatedAlpha& t) {
                          if (!t.table) throw ConfigurationError("tabulated polarizability has no table");
                          const auto& last = t.table->rows().back();
                          const double c_inf = last.xi * last.xi * last.alpha;
                          const double a0 = t.table->rows().front().alpha;
                          return OscillatorSet({{c_inf / constants::oscillator_prefactor, std::sqrt(c_inf / a0)}});
                        },
                    },
                    model);
}

} // namespace atomwall
