#include "atomwall/quadrature.hpp"

#include "atomwall/error.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <string>

namespace atomwall::quad {

namespace {

// L_n(x) and L_{n-1}(x) by the three-term recurrence, rescaled to stay finite.
// The true values are p * exp(log_scale).
struct LaguerrePair {
  long double p = 1.0L, p_prev = 0.0L, log_scale = 0.0L;
};

LaguerrePair laguerre_pair(std::size_t n, long double x) {
  constexpr long double big = 1e150L;
  LaguerrePair r;
  r.p_prev = 1.0;
  r.p = 1.0 - x;
  for (std::size_t k = 1; k < n; ++k) {
    const auto kd = static_cast<long double>(k);
    const long double next = ((2.0L * kd + 1.0L - x) * r.p - kd * r.p_prev) / (kd + 1.0L);
    r.p_prev = r.p;
    r.p = next;
    if (std::abs(r.p) > big) {
      r.p /= big;
      r.p_prev /= big;
      r.log_scale += std::log(big);
    }
  }
  return r;
}

LaguerreRule build_laguerre(std::size_t n) {
  // Jacobi matrix of the Laguerre weight: diag 2i+1, off-diagonal i+1.
  Eigen::VectorXd diag(static_cast<Eigen::Index>(n));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(n > 0 ? n - 1 : 0));
  for (std::size_t i = 0; i < n; ++i)
    diag[static_cast<Eigen::Index>(i)] = 2.0 * static_cast<double>(i) + 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    sub[static_cast<Eigen::Index>(i)] = static_cast<double>(i) + 1.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("Gauss-Laguerre eigenproblem failed", "order=" + std::to_string(n));

  // Eigenvalues seed Newton on L_n; weights follow from L_{n-1} at the polished
  // node, w = x / (n L_{n-1}(x))^2, which keeps full relative accuracy for the
  // tiny weights at large nodes.
  LaguerreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const auto nd = static_cast<long double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    long double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    if (n > 1) {
      for (int iter = 0; iter < 8; ++iter) {
        const auto r = laguerre_pair(n, x);
        // x L_n' = n (L_n - L_{n-1})
        const long double step = x * r.p / (nd * (r.p - r.p_prev));
        x -= step;
        if (std::abs(step) <= 1e-18L * x) break;
      }
    }
    rule.nodes[i] = static_cast<double>(x);
    if (n == 1) {
      rule.weights[i] = 1.0;
      continue;
    }
    const auto r = laguerre_pair(n, x);
    const long double log_w = std::log(x) - 2.0L * std::log(nd) - 2.0L * (std::log(std::abs(r.p_prev)) + r.log_scale);
    rule.weights[i] = static_cast<double>(std::exp(log_w));
  }
  return rule;
}

// Kronrod 15 / Gauss 7 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double lo, hi, value, error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

Piece kronrod15(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

} // namespace

const LaguerreRule& gauss_laguerre(std::size_t order) {
  if (order == 0) throw DomainError("Gauss-Laguerre order must be positive");
  static std::mutex mutex;
  static std::map<std::size_t, LaguerreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_laguerre(order)).first;
  // std::map never relocates nodes, so the reference stays valid after unlock.
  return it->second;
}

double apply(const LaguerreRule& rule, const std::function<double(double)>& f) {
  double sum = 0.0;
  // Smallest weights last: largest nodes carry the tiniest weights.
  for (std::size_t i = rule.nodes.size(); i-- > 0;) {
    if (rule.weights[i] == 0.0) continue;
    sum += rule.weights[i] * f(rule.nodes[i]);
  }
  return sum;
}

Estimate integrate_adaptive(const std::function<double(double)>& f,
                            std::span<const double> breakpoints,
                            const AdaptiveOptions& options) {
  if (breakpoints.size() < 2) throw DomainError("adaptive quadrature needs at least one interval");

  std::priority_queue<Piece> heap;
  Estimate est;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw DomainError("quadrature breakpoints must be strictly increasing");
    Piece p = kronrod15(f, breakpoints[i], breakpoints[i + 1]);
    est.value += p.value;
    est.error += p.error;
    est.evaluations += 15;
    heap.push(p);
  }

  auto tolerance = [&] { return std::max(options.abs_tol, options.rel_tol * std::abs(est.value)); };
  while (est.error > tolerance() && heap.size() < options.max_intervals) {
    Piece worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break; // interval at machine resolution
    heap.pop();
    Piece left = kronrod15(f, worst.lo, mid);
    Piece right = kronrod15(f, mid, worst.hi);
    est.value += left.value + right.value - worst.value;
    est.error += left.error + right.error - worst.error;
    est.evaluations += 30;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the pieces; the running totals accumulate cancellation error.
  est.value = 0.0;
  est.error = 0.0;
  est.intervals = heap.size();
  while (!heap.empty()) {
    est.value += heap.top().value;
    est.error += heap.top().error;
    heap.pop();
  }
  est.converged = est.error <= tolerance();
  return est;
}

Estimate integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                            const AdaptiveOptions& options) {
  const std::array<double, 2> bp = {lo, hi};
  return integrate_adaptive(f, bp, options);
}

} // namespace atomwall::quad
