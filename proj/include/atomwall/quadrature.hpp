#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace atomwall::quad {

/// Gauss-Laguerre rule for  int_0^inf e^{-t} f(t) dt.
struct LaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point rule (Golub-Welsch). Thread-safe; rules are built once per order.
const LaguerreRule& gauss_laguerre(std::size_t order);

/// Applies a Laguerre rule to f.
double apply(const LaguerreRule& rule, const std::function<double(double)>& f);

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_intervals = 20000;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
  bool converged = false;
};

/// Globally adaptive 15-point Gauss-Kronrod over the consecutive intervals
/// [breakpoints[i], breakpoints[i+1]]. Bisects the interval with the largest
/// error estimate until  error <= max(abs_tol, rel_tol*|value|)  or the
/// interval budget runs out (then `converged` is false).
Estimate integrate_adaptive(const std::function<double(double)>& f,
                            std::span<const double> breakpoints,
                            const AdaptiveOptions& options = {});

/// Single-interval convenience overload.
Estimate integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                            const AdaptiveOptions& options = {});

} // namespace atomwall::quad
