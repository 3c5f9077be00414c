#pragma once

#include <vector>

namespace atomwall {

/// Piecewise cubic Hermite interpolant with Steffen's slope limiter: it never
/// overshoots, so monotone data stays monotone between the knots.
class MonotoneCubic {
public:
  MonotoneCubic() = default;
  /// x strictly increasing, at least two knots.
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  /// Evaluates inside [front, back]; throws DomainError outside.
  double operator()(double x) const;

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  std::size_t size() const { return x_.size(); }

private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

} // namespace atomwall
