#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "darboux/antiderivative.hpp"
#include "darboux/orbit.hpp"
#include "darboux/qpfunc.hpp"

namespace darboux {

/// Darboux field on a hyperbolic or parabolic orbit: quasi-periodic u with
/// winding alpha (hyperbolic) or 0 (parabolic), gauge-fixed to u(0) = 0.
struct DarbouxField {
  OrbitKind kind = OrbitKind::hyperbolic;
  QuasiPeriodicFn u;
};

/// Point of the Teichmuller model: smooth periodic u together with the marked
/// points y (where f(y) = pi) and z (where f(z) = 0). Valid points satisfy
/// u'(y) = 0 and the integral constraint int (e^u - e^{u(y)})/sin^2((x-y)/2) = 0.
struct TeichPoint {
  PeriodicFn u;
  double y = kPi;
  double z = 0.0;
};

namespace detail {

inline constexpr double kWindowHalfWidth = 1e-3;  // Taylor window around removable points

/// Signed circle distance in (-pi, pi].
inline double wrap_to_pi(double d) {
  d = std::remainder(d, kTwoPi);
  return d;
}

inline double wrap_to_period(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

/// (f(y0 + eps) - f(y0)) / 2 by a 6th-order Taylor series in eps; used inside
/// the window where the direct difference loses relative accuracy.
inline double half_increment_series(const QPEvaluator& f, double y0, double eps) {
  const double d1 = f.derivative(y0, 1);
  const double d2 = f.derivative(y0, 2);
  const double d3 = f.derivative(y0, 3);
  const double d4 = f.derivative(y0, 4);
  const double d5 = f.derivative(y0, 5);
  const double d6 = f.derivative(y0, 6);
  return 0.5 * eps *
         (d1 + eps * (d2 / 2.0 +
                      eps * (d3 / 6.0 + eps * (d4 / 24.0 + eps * (d5 / 120.0 + eps * d6 / 720.0)))));
}

/// log[ sin^2((x - y0)/2) / sin^2((f(x) - fy0)/2) ] for monotone f, with the
/// removable singularity at x = y0 handled by the series above. fy0 is the
/// nominal value of f at y0 (e.g. pi); y0 itself is a root-finding output, so
/// the residual f(y0) - fy0 (~1e-14) is carried into the series explicitly --
/// dropping it costs ~residual/eps in relative accuracy near the window core.
inline double log_sin_ratio(const QPEvaluator& f, double y0, double fy0, double x) {
  const double eps = wrap_to_pi(x - y0);
  double q;  // (f(x) - fy0)/2 reduced to the principal branch
  if (std::abs(eps) < kWindowHalfWidth) {
    if (eps == 0.0) return -2.0 * std::log(f.derivative(y0, 1));
    // the root residual f(y0) - fy0 is divided by eps downstream, so it is
    // evaluated with compensated summation
    const double residual =
        f.winding() * y0 + f.periodic_part().value_compensated(y0) - fy0;
    q = 0.5 * residual + half_increment_series(f, y0, eps);
  } else {
    q = 0.5 * wrap_to_pi(f.value(y0 + eps) - fy0);
  }
  const double num = std::sin(0.5 * eps);
  const double den = std::sin(q);
  return 2.0 * (std::log(std::abs(num)) - std::log(std::abs(den)));
}

}  // namespace detail

/// q_alpha: f -> u(x) = alpha f(x) + log f'(x), gauge-fixed to u(0) = 0.
inline DarbouxField to_darboux_hyperbolic(const QuasiPeriodicFn& f, const OrbitParams& params) {
  if (params.kind != OrbitKind::hyperbolic)
    throw std::invalid_argument("to_darboux_hyperbolic: params must describe a hyperbolic orbit");
  params.validate();
  require_diffeo(f, "to_darboux_hyperbolic");
  const double alpha = params.alpha();
  const PeriodicFn d1 = derivative(f, 1);
  const std::size_t n = f.grid_size();
  DarbouxField out;
  out.kind = OrbitKind::hyperbolic;
  out.u.winding = alpha;
  out.u.periodic.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    out.u.periodic[j] = alpha * f.grid_value(j) + std::log(d1.samples[j]) - alpha * f.grid_x(j);
  const double gauge = out.u.periodic[0];
  for (double& v : out.u.periodic) v -= gauge;
  return out;
}

/// Inverse of q_alpha. The output satisfies q_alpha(f) = u exactly (not just
/// up to a constant), winding one.
inline QuasiPeriodicFn from_darboux_hyperbolic(const DarbouxField& field, const OrbitParams& params) {
  if (params.kind != OrbitKind::hyperbolic || field.kind != OrbitKind::hyperbolic)
    throw std::invalid_argument("from_darboux_hyperbolic: hyperbolic orbit required");
  params.validate();
  const double alpha = params.alpha();
  if (std::abs(field.u.winding - alpha) > 1e-9)
    throw std::invalid_argument("from_darboux_hyperbolic: field winding does not match alpha");
  const std::size_t n = field.u.grid_size();
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = std::exp(field.u.periodic[j]);
  SpectralAntiderivative anti(alpha, g);
  const double expa = std::exp(kTwoPi * alpha);
  const double total = anti.total();
  const double logscale = std::log(alpha / (expa - 1.0));
  const std::vector<double> a = anti.grid();
  QuasiPeriodicFn f;
  f.winding = 1.0;
  f.periodic.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = (expa - 1.0) * a[j] + total;
    f.periodic[j] = (std::log(w) + logscale) / alpha - f.grid_x(j);
  }
  return f;
}

/// q_0: f -> u = log f', gauge-fixed to u(0) = 0.
inline DarbouxField to_darboux_parabolic(const QuasiPeriodicFn& f) {
  require_diffeo(f, "to_darboux_parabolic");
  const PeriodicFn d1 = derivative(f, 1);
  DarbouxField out;
  out.kind = OrbitKind::parabolic;
  out.u.winding = 0.0;
  out.u.periodic.resize(f.grid_size());
  for (std::size_t j = 0; j < f.grid_size(); ++j) out.u.periodic[j] = std::log(d1.samples[j]);
  const double gauge = out.u.periodic[0];
  for (double& v : out.u.periodic) v -= gauge;
  return out;
}

/// Inverse of q_0 with the representative fixed by f(0) = 0.
inline QuasiPeriodicFn from_darboux_parabolic(const DarbouxField& field) {
  if (field.kind != OrbitKind::parabolic)
    throw std::invalid_argument("from_darboux_parabolic: parabolic field required");
  if (std::abs(field.u.winding) > 1e-12)
    throw std::invalid_argument("from_darboux_parabolic: field winding must vanish");
  const std::size_t n = field.u.grid_size();
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = std::exp(field.u.periodic[j]);
  SpectralAntiderivative anti(0.0, g);
  const double total = anti.total();
  const std::vector<double> a = anti.grid();
  QuasiPeriodicFn f;
  f.winding = 1.0;
  f.periodic.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    f.periodic[j] = kTwoPi * a[j] / total - f.grid_x(j);
  return f;
}

/// Marked points of the Teichmuller chart: y with f(y) = pi and z with
/// f(z) = 0, both reduced to [0, 2pi). Bracketed monotone root-finding.
inline std::pair<double, double> teichmuller_marked_points(const QuasiPeriodicFn& f) {
  QPEvaluator ev(f);
  double bound = 0.5;
  for (double v : f.periodic) bound = std::max(bound, std::abs(v) + 0.5);
  const double y = detail::invert_at(ev, kPi, kPi - bound, kPi + bound, kPi);
  const double z = detail::invert_at(ev, 0.0, -bound, bound, 0.0);
  return {detail::wrap_to_period(y), detail::wrap_to_period(z)};
}

/// f -> (u, y, z) with u(x) = log sin^2((x-y)/2) - log cos^2(f(x)/2) + log f'(x).
inline TeichPoint to_teichmuller(const QuasiPeriodicFn& f) {
  require_diffeo(f, "to_teichmuller");
  if (std::abs(f.winding - 1.0) > 1e-12)
    throw std::domain_error("to_teichmuller: winding must be one");
  const auto [y, z] = teichmuller_marked_points(f);
  QPEvaluator ev(f);
  const PeriodicFn d1 = derivative(f, 1);
  const std::size_t n = f.grid_size();
  TeichPoint p;
  p.y = y;
  p.z = z;
  p.u.samples.resize(n);
  // cos^2(f/2) = sin^2((f - pi)/2), so u is a log of a ratio of sines and the
  // singularity at x = y cancels against f(y) = pi.
  for (std::size_t j = 0; j < n; ++j) {
    const double x = f.grid_x(j);
    p.u.samples[j] = detail::log_sin_ratio(ev, y, kPi, x) + std::log(d1.samples[j]);
  }
  return p;
}

/// Integrand of the Teichmuller constraint, smooth across x = y:
/// psi(x) = (e^{u(x)} - e^{u(y)}) / sin^2((x - y)/2).
inline PeriodicFn teichmuller_constraint_integrand(const TeichPoint& p) {
  const std::size_t n = p.u.grid_size();
  TrigInterpolant iu(p.u.samples);
  const double uy = iu.value(p.y);
  const double euy = std::exp(uy);
  PeriodicFn psi;
  psi.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    const double eps = detail::wrap_to_pi(x - p.y);
    const double s = std::sin(0.5 * eps);
    if (std::abs(eps) < detail::kWindowHalfWidth) {
      const double d1 = iu.derivative(p.y, 1);
      const double d2 = iu.derivative(p.y, 2);
      const double d3 = iu.derivative(p.y, 3);
      const double d4 = iu.derivative(p.y, 4);
      const double d5 = iu.derivative(p.y, 5);
      const double d6 = iu.derivative(p.y, 6);
      const double du =
          eps * (d1 + eps * (d2 / 2.0 + eps * (d3 / 6.0 +
                                               eps * (d4 / 24.0 +
                                                      eps * (d5 / 120.0 + eps * d6 / 720.0)))));
      if (eps == 0.0) {
        psi.samples[j] = 2.0 * euy * (d2 + d1 * d1);
      } else {
        psi.samples[j] = euy * std::expm1(du) / (s * s);
      }
    } else {
      psi.samples[j] = (std::exp(iu.value(x)) - euy) / (s * s);
    }
  }
  return psi;
}

inline double teichmuller_constraint_integral(const TeichPoint& p) {
  return integrate(teichmuller_constraint_integrand(p));
}

inline double teichmuller_uprime_at_y(const TeichPoint& p) {
  return TrigInterpolant(p.u.samples).derivative(p.y, 1);
}

/// Inverse of the Teichmuller chart:
/// f(x) = 2 arctan( (1/2) int_z^x e^{u(s)} / sin^2((s-y)/2) ds ),
/// with the pole of the integrand at s = y split off in closed form
/// (int ds/sin^2((s-y)/2) = -2 cot((s-y)/2)) and the arctan branch chosen so
/// that f is continuous, increasing, and f(z) = 0, f(y) = pi.
inline QuasiPeriodicFn from_teichmuller(const TeichPoint& p) {
  const double uprime = teichmuller_uprime_at_y(p);
  if (std::abs(uprime) > 1e-6)
    throw std::invalid_argument("from_teichmuller: u'(y) does not vanish");
  const double constraint = teichmuller_constraint_integral(p);
  if (std::abs(constraint) > 1e-4)
    throw std::invalid_argument("from_teichmuller: integral constraint violated");

  PeriodicFn psi = teichmuller_constraint_integrand(p);
  // The exact integrand has zero mean (that is the integral constraint); the
  // numerical mean is quadrature residual and would otherwise turn into a
  // secular drift of f. Project it out.
  const double mean = integrate(psi) / kTwoPi;
  for (double& v : psi.samples) v -= mean;
  SpectralAntiderivative anti(0.0, psi.samples);
  TrigInterpolant iu(p.u.samples);
  const double euy = std::exp(iu.value(p.y));
  const double psi_at_z = anti.value(p.z);
  const double cot_zy = 1.0 / std::tan(0.5 * detail::wrap_to_pi(p.z - p.y));

  const std::size_t n = p.u.grid_size();
  QuasiPeriodicFn f;
  f.winding = 1.0;
  f.periodic.resize(n);
  const bool y_after_z = p.y > p.z;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    const double eps = detail::wrap_to_pi(x - p.y);
    double value;
    if (std::abs(eps) < 1e-13) {
      value = kPi;
    } else {
      const double h = 0.5 * (anti.value(x) - psi_at_z) + euy * (cot_zy - 1.0 / std::tan(0.5 * eps));
      double phi = 2.0 * std::atan(h);
      if (y_after_z) {
        if (x >= p.z && x > p.y) phi += kTwoPi;
      } else {
        if (x < p.z && x > p.y) phi += kTwoPi;
        if (x < p.z) phi -= kTwoPi;
      }
      value = phi;
    }
    f.periodic[j] = value - x;
  }
  return f;
}

/// Pointwise residual of the defining relation
/// f'(x) sin^2((x-y)/2) = e^{u(x)} cos^2(f(x)/2); a cross-check of
/// from_teichmuller independent of the arctan branch bookkeeping.
inline double teichmuller_ode_residual(const QuasiPeriodicFn& f, const TeichPoint& p) {
  const PeriodicFn d1 = derivative(f, 1);
  TrigInterpolant iu(p.u.samples);
  double worst = 0.0;
  const std::size_t n = f.grid_size();
  for (std::size_t j = 0; j < n; ++j) {
    const double x = f.grid_x(j);
    const double s = std::sin(0.5 * detail::wrap_to_pi(x - p.y));
    const double c = std::cos(0.5 * f.grid_value(j));
    worst = std::max(worst, std::abs(d1.samples[j] * s * s - std::exp(iu.value(x)) * c * c));
  }
  return worst;
}

/// Affine action u^h(x) = u(h(x)) + log h'(x) on hyperbolic/parabolic fields;
/// the winding is preserved and the gauge re-fixed to u(0) = 0.
inline DarbouxField apply_diffeo_action(const DarbouxField& field, const QuasiPeriodicFn& h) {
  require_diffeo(h, "apply_diffeo_action");
  const PeriodicFn hp = derivative(h, 1);
  QPEvaluator ue(field.u);
  DarbouxField out;
  out.kind = field.kind;
  out.u.winding = field.u.winding;
  const std::size_t n = h.grid_size();
  out.u.periodic.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = h.grid_x(j);
    const double v = ue.value(h.grid_value(j)) + std::log(hp.samples[j]);
    out.u.periodic[j] = v - out.u.winding * x;
  }
  const double gauge = out.u.periodic[0];
  for (double& v : out.u.periodic) v -= gauge;
  return out;
}

/// Action on the Teichmuller model: the marked points move by h^{-1} and the
/// field picks up the sine-ratio correction
/// u^h(x) = u(h(x)) + log h'(x) + log[ sin^2((x - h^{-1}(y))/2) / sin^2((h(x) - y)/2) ].
inline TeichPoint apply_diffeo_action(const TeichPoint& p, const QuasiPeriodicFn& h) {
  require_diffeo(h, "apply_diffeo_action");
  if (std::abs(h.winding - 1.0) > 1e-12)
    throw std::domain_error("apply_diffeo_action: winding of h must be one");
  QPEvaluator he(h);
  const PeriodicFn hp = derivative(h, 1);
  TrigInterpolant iu(p.u.samples);
  double bound = 0.5;
  for (double v : h.periodic) bound = std::max(bound, std::abs(v) + 0.5);
  const double ynew =
      detail::wrap_to_period(detail::invert_at(he, p.y, p.y - bound, p.y + bound, p.y));
  const double znew =
      detail::wrap_to_period(detail::invert_at(he, p.z, p.z - bound, p.z + bound, p.z));
  const std::size_t n = h.grid_size();
  TeichPoint out;
  out.y = ynew;
  out.z = znew;
  out.u.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = h.grid_x(j);
    out.u.samples[j] = iu.value(h.grid_value(j)) + std::log(hp.samples[j]) +
                       detail::log_sin_ratio(he, ynew, p.y, x);
  }
  return out;
}

}  // namespace darboux
