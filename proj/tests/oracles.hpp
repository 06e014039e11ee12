#pragma once

// Independent oracles used by the test suites. Everything here is deliberately
// implemented by the most elementary method available (bisection, series with
// tail bounds, adaptive Simpson, central differences) so that it shares no
// code path with the library implementations it checks.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Plain bisection for monotone increasing f.
template <class F>
double bisect(F&& f, double target, double lo, double hi, int iters = 200) {
  double flo = f(lo) - target;
  if (flo > 0.0) throw std::invalid_argument("bisect: bad bracket (lo)");
  if (f(hi) < target) throw std::invalid_argument("bisect: bad bracket (hi)");
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) - target <= 0.0) lo = mid; else hi = mid;
    if (hi - lo < 1e-16 * (1.0 + std::abs(lo))) break;
  }
  return 0.5 * (lo + hi);
}

/// Maclaurin series for erf, alternating with a hard tail bound; accurate to
/// ~1e-15 for |x| <= 3 (terms decay fast there).
inline double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = 0.0;
  for (int k = 0; k < 300; ++k) {
    sum += term / (2 * k + 1);
    term *= -x2 / (k + 1);
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30)) break;
  }
  return sum * 2.0 / std::sqrt(kPi);
}

/// Truncated mode sum for the circle covariance:
/// sum_{n=1}^{N} (12 / (pi c t n^2)) cos(n theta).
inline double covariance_mode_sum(double theta, double c, double t, long n_modes) {
  double s = 0.0;
  for (long n = n_modes; n >= 1; --n)
    s += std::cos(n * theta) / (static_cast<double>(n) * static_cast<double>(n));
  return s * 12.0 / (kPi * c * t);
}

/// Adaptive Simpson quadrature (recursive, absolute/relative mixed control).
namespace detail {
template <class F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-12, int depth = 40) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Central-difference directional derivative of a functional.
template <class F>
double central_difference(F&& g, double h) {
  return (g(h) - g(-h)) / (2.0 * h);
}

/// Neville extrapolation of samples (eps_i, v_i) to eps -> 0. The eps grid is
/// assumed geometric; this is the Richardson table in disguise.
inline double extrapolate_to_zero(std::vector<double> eps, std::vector<double> v) {
  const std::size_t n = v.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      v[i] = v[i + 1] + (v[i + 1] - v[i]) * eps[i + level] / (eps[i] - eps[i + level]);
  return v[0];
}

}  // namespace oracles
