#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "darboux/fft.hpp"

namespace darboux {

/// A 2pi-periodic function stored by its values on the uniform grid
/// x_j = 2pi j / N with N a power of two.
struct PeriodicFn {
  std::vector<double> samples;

  std::size_t grid_size() const { return samples.size(); }
  double grid_x(std::size_t j) const { return kTwoPi * static_cast<double>(j) / static_cast<double>(samples.size()); }
};

/// A quasi-periodic function f(x + 2pi) = f(x) + 2pi w, stored as the winding
/// w together with grid samples of the periodic part f(x) - w x.
struct QuasiPeriodicFn {
  double winding = 0.0;
  std::vector<double> periodic;

  std::size_t grid_size() const { return periodic.size(); }
  double grid_x(std::size_t j) const { return kTwoPi * static_cast<double>(j) / static_cast<double>(periodic.size()); }
  double grid_value(std::size_t j) const { return winding * grid_x(j) + periodic[j]; }
};

namespace detail {

inline void require_grid(std::size_t n) {
  if (n < 4 || !is_power_of_two(n))
    throw std::invalid_argument("grid size must be a power of two >= 4");
}

// (i nu)^order with the Nyquist bin zeroed for odd orders; even orders get the
// real multiplier (-nu^2)^{order/2} so that the Nyquist cosine survives.
inline std::complex<double> derivative_multiplier(long nu, std::size_t k, std::size_t n, int order) {
  if (2 * k == n && (order % 2) != 0) return {0.0, 0.0};
  std::complex<double> m(1.0, 0.0);
  const std::complex<double> inu(0.0, static_cast<double>(nu));
  for (int p = 0; p < order; ++p) m *= inu;
  return m;
}

}  // namespace detail

/// Trigonometric interpolant of grid samples; evaluation at arbitrary points
/// goes by direct mode summation, O(N) per point.
class TrigInterpolant {
 public:
  struct from_coefficients_t {};
  static constexpr from_coefficients_t from_coefficients{};

  TrigInterpolant() = default;
  explicit TrigInterpolant(const std::vector<double>& samples) : coeff_(spectrum(samples)) {
    detail::require_grid(samples.size());
  }
  TrigInterpolant(from_coefficients_t, std::vector<std::complex<double>> coeff)
      : coeff_(std::move(coeff)) {
    detail::require_grid(coeff_.size());
  }

  std::size_t grid_size() const { return coeff_.size(); }
  const std::vector<std::complex<double>>& coefficients() const { return coeff_; }

  double value(double x) const { return sum_modes(x, 0); }

  /// Kahan-compensated evaluation with per-mode trigonometry; used where an
  /// absolute accuracy near one ulp of the sample scale matters (root
  /// residuals feeding the removable-singularity windows).
  double value_compensated(double x) const {
    const std::size_t n = coeff_.size();
    double acc = coeff_[0].real();
    double comp = 0.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
      const double kx = static_cast<double>(k) * x;
      const std::complex<double> w(std::cos(kx), std::sin(kx));
      const double scale = 2 * k == n ? 1.0 : 2.0;
      const double term = scale * (coeff_[k] * w).real();
      const double y = term - comp;
      const double t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
    return acc;
  }

  /// order-th derivative of the interpolant, order in 0..6. As with the grid
  /// derivative, modes above N/4 are dropped for order >= 1 (the module
  /// contract keeps resolved content below N/4, and the cap bounds the
  /// n^order amplification of coefficient noise).
  double derivative(double x, int order) const {
    if (order < 0 || order > 6) throw std::invalid_argument("derivative order must be in 0..6");
    return sum_modes(x, order);
  }

 private:
  double sum_modes(double x, int order) const {
    const std::size_t n = coeff_.size();
    const std::size_t cap = order == 0 ? n / 2 - 1 : n / 4;
    const std::complex<double> z(std::cos(x), std::sin(x));
    std::complex<double> w(1.0, 0.0);  // e^{i k x}, advanced incrementally
    double acc = order == 0 ? coeff_[0].real() : 0.0;
    for (std::size_t k = 1; k <= cap; ++k) {
      if ((k & 127u) == 0) w = std::complex<double>(std::cos(k * x), std::sin(k * x));
      else w *= z;
      const auto m = detail::derivative_multiplier(static_cast<long>(k), k, n, order);
      acc += 2.0 * (coeff_[k] * m * w).real();
    }
    // Nyquist cosine for plain evaluation; derivatives stop at the N/4 cap
    if (order == 0) {
      const std::size_t h = n / 2;
      const double hx = static_cast<double>(h) * x;
      acc += coeff_[h].real() * std::cos(hx);
    }
    return acc;
  }

  std::vector<std::complex<double>> coeff_;
};

/// Evaluator for a quasi-periodic function: winding term plus interpolated
/// periodic part.
class QPEvaluator {
 public:
  explicit QPEvaluator(const QuasiPeriodicFn& f) : winding_(f.winding), interp_(f.periodic) {}

  double value(double x) const { return winding_ * x + interp_.value(x); }
  double derivative(double x, int order) const {
    double d = interp_.derivative(x, order);
    if (order == 1) d += winding_;
    return d;
  }
  double winding() const { return winding_; }
  const TrigInterpolant& periodic_part() const { return interp_; }

 private:
  double winding_ = 0.0;
  TrigInterpolant interp_;
};

template <class F>
PeriodicFn sample_periodic(F&& f, std::size_t n) {
  detail::require_grid(n);
  PeriodicFn out;
  out.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.samples[j] = f(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
  return out;
}

template <class F>
QuasiPeriodicFn sample_quasi_periodic(F&& f, double winding, std::size_t n) {
  detail::require_grid(n);
  QuasiPeriodicFn out;
  out.winding = winding;
  out.periodic.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    out.periodic[j] = f(x) - winding * x;
  }
  return out;
}

inline QuasiPeriodicFn identity_diffeo(std::size_t n) {
  QuasiPeriodicFn out;
  out.winding = 1.0;
  out.periodic.assign(n, 0.0);
  detail::require_grid(n);
  return out;
}

/// Trapezoid rule over one period; spectrally accurate for smooth periodic
/// integrands on the uniform grid.
inline double integrate(const PeriodicFn& f) {
  double s = 0.0;
  for (double v : f.samples) s += v;
  return s * kTwoPi / static_cast<double>(f.samples.size());
}

inline double min_sample(const PeriodicFn& f) {
  return *std::min_element(f.samples.begin(), f.samples.end());
}

inline double max_abs_sample(const PeriodicFn& f) {
  double m = 0.0;
  for (double v : f.samples) m = std::max(m, std::abs(v));
  return m;
}

/// Spectral derivative of the periodic part on the grid. Modes above N/4 are
/// dropped: the operation contract requires N >= 4x the highest resolved
/// frequency, and the cap keeps the n^order amplification of roundoff below
/// the documented tolerances.
inline PeriodicFn derivative(const PeriodicFn& f, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("derivative: order must be in 1..3");
  detail::require_grid(f.samples.size());
  auto coeff = spectrum(f.samples);
  const std::size_t n = coeff.size();
  for (std::size_t k = 0; k < n; ++k) {
    const long nu = signed_frequency(k, n);
    if (static_cast<std::size_t>(std::labs(nu)) > n / 4)
      coeff[k] = 0.0;
    else
      coeff[k] *= detail::derivative_multiplier(nu, k, n, order);
  }
  return PeriodicFn{grid_values(std::move(coeff))};
}

/// Derivative of a quasi-periodic function; the winding contributes only to
/// order one, so the result is periodic for every order.
inline PeriodicFn derivative(const QuasiPeriodicFn& f, int order) {
  PeriodicFn d = derivative(PeriodicFn{f.periodic}, order);
  if (order == 1)
    for (double& v : d.samples) v += f.winding;
  return d;
}

struct DiffeoReport {
  double min_derivative = 0.0;
  double winding = 0.0;
  double quasiperiodicity_defect = 0.0;
  bool is_diffeo = false;
};

/// Reports min f', the winding, and the measured quasi-periodicity defect
/// max_j |f(x_j + 2pi) - f(x_j) - 2pi w|.
inline DiffeoReport check_diffeo(const QuasiPeriodicFn& f) {
  DiffeoReport r;
  r.winding = f.winding;
  r.min_derivative = min_sample(derivative(f, 1));
  QPEvaluator ev(f);
  const std::size_t probes = 16;
  for (std::size_t j = 0; j < probes; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(probes);
    r.quasiperiodicity_defect = std::max(
        r.quasiperiodicity_defect, std::abs(ev.value(x + kTwoPi) - ev.value(x) - kTwoPi * f.winding));
  }
  r.is_diffeo = r.min_derivative > 0.0;
  return r;
}

inline void require_diffeo(const QuasiPeriodicFn& f, const char* who) {
  if (min_sample(derivative(f, 1)) <= 0.0)
    throw std::domain_error(std::string(who) + ": input is not an orientation-preserving diffeomorphism");
}

/// outer o inner on the grid of inner. inner must be monotone; the winding of
/// the result is the product of the windings (inner winding integral).
inline QuasiPeriodicFn compose(const QuasiPeriodicFn& outer, const QuasiPeriodicFn& inner) {
  require_diffeo(inner, "compose");
  const double wi = inner.winding;
  if (std::abs(wi - std::round(wi)) > 1e-12)
    throw std::domain_error("compose: inner winding must be an integer");
  QuasiPeriodicFn out;
  out.winding = outer.winding * wi;
  const std::size_t n = inner.grid_size();
  out.periodic.resize(n);
  TrigInterpolant pouter(outer.periodic);
  for (std::size_t j = 0; j < n; ++j) {
    const double hx = inner.grid_value(j);
    const double val = outer.winding * hx + pouter.value(hx);
    out.periodic[j] = val - out.winding * inner.grid_x(j);
  }
  return out;
}

namespace detail {

/// Solve f(x) = y on a monotone quasi-periodic f by safeguarded Newton with a
/// maintained bracket; bisection step whenever Newton leaves the bracket.
inline double invert_at(const QPEvaluator& ev, double y, double lo, double hi, double guess) {
  double flo = ev.value(lo) - y;
  double fhi = ev.value(hi) - y;
  int expand = 0;
  while (flo > 0.0 && expand++ < 60) { lo -= 0.5; flo = ev.value(lo) - y; }
  expand = 0;
  while (fhi < 0.0 && expand++ < 60) { hi += 0.5; fhi = ev.value(hi) - y; }
  if (flo > 0.0 || fhi < 0.0) throw std::domain_error("invert: failed to bracket root");
  double x = std::clamp(guess, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = ev.value(x) - y;
    if (std::abs(fx) < 1e-14) return x;
    if (fx > 0.0) hi = x; else lo = x;
    const double dfx = ev.derivative(x, 1);
    double step = dfx > 0.0 ? fx / dfx : std::numeric_limits<double>::infinity();
    double xn = x - step;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) < 1e-15 * (1.0 + std::abs(x))) return xn;
    x = xn;
  }
  return x;
}

}  // namespace detail

/// Inverse of a circle diffeomorphism (winding one), computed by monotone
/// root-finding per grid node; |f(g(x)) - x| <= 1e-12 on the grid.
inline QuasiPeriodicFn invert_diffeo(const QuasiPeriodicFn& f) {
  require_diffeo(f, "invert_diffeo");
  if (std::abs(f.winding - 1.0) > 1e-12)
    throw std::domain_error("invert_diffeo: winding must be one");
  const std::size_t n = f.grid_size();
  QPEvaluator ev(f);
  double bound = 0.0;
  for (double v : f.periodic) bound = std::max(bound, std::abs(v));
  bound += 0.5;
  QuasiPeriodicFn g;
  g.winding = 1.0;
  g.periodic.resize(n);
  double prev = -bound;  // running lower bound for the next root
  for (std::size_t j = 0; j < n; ++j) {
    const double y = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    const double root = detail::invert_at(ev, y, std::max(prev, y - bound), y + bound,
                                          j == 0 ? y : prev);
    g.periodic[j] = root - y;
    prev = root;
  }
  return g;
}

/// Schwarzian derivative S(f) = f'''/f' - (3/2)(f''/f')^2 on the grid.
inline PeriodicFn schwarzian(const QuasiPeriodicFn& f) {
  const PeriodicFn d1 = derivative(f, 1);
  if (min_sample(d1) <= 0.0) throw std::domain_error("schwarzian: f' must be positive");
  const PeriodicFn d2 = derivative(f, 2);
  const PeriodicFn d3 = derivative(f, 3);
  PeriodicFn s;
  s.samples.resize(f.grid_size());
  for (std::size_t j = 0; j < s.samples.size(); ++j) {
    const double r = d2.samples[j] / d1.samples[j];
    s.samples[j] = d3.samples[j] / d1.samples[j] - 1.5 * r * r;
  }
  return s;
}

/// Schwarzian of a smooth callable at one point, by five-point central
/// differences with one Richardson pass. Good to ~1e-9 for analytic f at the
/// default step.
template <class F>
double schwarzian_fd(F&& f, double x, double h = 1e-2) {
  auto stencil = [&](double step) {
    const double fm2 = f(x - 2 * step), fm1 = f(x - step), fp1 = f(x + step), fp2 = f(x + 2 * step);
    const double d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * step);
    const double d2 = (-fm2 + 16 * fm1 - 30 * f(x) + 16 * fp1 - fp2) / (12 * step * step);
    const double d3 = (-fm2 + 2 * fm1 - 2 * fp1 + fp2) / (2 * step * step * step);
    if (d1 == 0.0) throw std::domain_error("schwarzian_fd: vanishing derivative");
    const double r = d2 / d1;
    return d3 / d1 - 1.5 * r * r;
  };
  const double a = stencil(h);
  const double b = stencil(h / 2);
  // d1,d2 stencils are O(h^4); d3 is O(h^2), so the combined error is O(h^2)
  return (4.0 * b - a) / 3.0;
}

}  // namespace darboux
