#include "atomwall/interpolation.hpp"

#include "atomwall/error.hpp"

#include <algorithm>
#include <cmath>

namespace atomwall {

namespace {
double sign(double v) { return (v > 0.0) - (v < 0.0); }
} // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw DomainError("interpolation needs at least two (x, y) knots");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i] < x_[i + 1])) throw DomainError("interpolation knots must be strictly increasing");

  std::vector<double> h(n - 1), secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    secant[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  slope_.assign(n, 0.0);
  if (n == 2) {
    slope_[0] = slope_[1] = secant[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double p = (secant[i - 1] * h[i] + secant[i] * h[i - 1]) / (h[i - 1] + h[i]);
    slope_[i] = (sign(secant[i - 1]) + sign(secant[i])) *
                std::min({std::abs(secant[i - 1]), std::abs(secant[i]), 0.5 * std::abs(p)});
  }
  // One-sided ends (Steffen 1990, eq. 26-27).
  auto end_slope = [](double s0, double s1, double h0, double h1) {
    const double p = s0 * (1.0 + h0 / (h0 + h1)) - s1 * h0 / (h0 + h1);
    if (p * s0 <= 0.0) return 0.0;
    if (std::abs(p) > 2.0 * std::abs(s0)) return 2.0 * s0;
    return p;
  };
  slope_[0] = end_slope(secant[0], secant[1], h[0], h[1]);
  slope_[n - 1] = end_slope(secant[n - 2], secant[n - 3], h[n - 2], h[n - 3]);
}

double MonotoneCubic::operator()(double x) const {
  if (x_.empty()) throw DomainError("empty interpolant");
  if (!(x >= x_.front() && x <= x_.back())) throw DomainError("interpolation point outside the knot range");
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  if (i >= x_.size() - 1) i = x_.size() - 2;
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

} // namespace atomwall
