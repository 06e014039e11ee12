#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "darboux/charts.hpp"
#include "darboux/orbit.hpp"
#include "darboux/qpfunc.hpp"

namespace darboux {

/// Which chart a variation lives in.
enum class Chart { diffeo, darboux };

/// A tangent vector: a 2pi-periodic variation delta f (diffeo chart) or
/// delta u (Darboux chart) at some base point.
struct TangentVector {
  Chart chart = Chart::diffeo;
  PeriodicFn delta;
};

namespace detail {

inline void require_chart(const TangentVector& t, Chart expected, const char* who) {
  if (t.chart != expected) throw std::invalid_argument(std::string(who) + ": tangent lives in the wrong chart");
}

}  // namespace detail

/// KKS symplectic form at the point b^f, contracted on two variations of f:
///   omega(v,w) = int [ b0 (v' w - w' v) + (c/24)(A(v) B(w) - A(w) B(v)) ] dx
/// with A = delta log f' and B = (delta log f')'. Wedge convention
/// (A ^ B)(v,w) = A(v)B(w) - A(w)B(v), no 1/2.
inline double kks_form(const QuasiPeriodicFn& f, const TangentVector& v, const TangentVector& w,
                       const OrbitParams& params) {
  detail::require_chart(v, Chart::diffeo, "kks_form");
  detail::require_chart(w, Chart::diffeo, "kks_form");
  params.validate();
  const std::size_t n = f.grid_size();
  const PeriodicFn fp = derivative(f, 1);
  const PeriodicFn vp = derivative(v.delta, 1);
  const PeriodicFn wp = derivative(w.delta, 1);
  // A(v) = v'/f' on the grid, then B(v) = (A(v))' spectrally
  PeriodicFn av, aw;
  av.samples.resize(n);
  aw.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    av.samples[j] = vp.samples[j] / fp.samples[j];
    aw.samples[j] = wp.samples[j] / fp.samples[j];
  }
  const PeriodicFn bv = derivative(av, 1);
  const PeriodicFn bw = derivative(aw, 1);
  PeriodicFn integrand;
  integrand.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double orbit_term = params.b0 * (vp.samples[j] * w.delta.samples[j] -
                                           wp.samples[j] * v.delta.samples[j]);
    const double central_term = (params.c / 24.0) * (av.samples[j] * bw.samples[j] -
                                                     aw.samples[j] * bv.samples[j]);
    integrand.samples[j] = orbit_term + central_term;
  }
  return integrate(integrand);
}

/// Darboux-chart form omega = (c/24) int (du1 du2' - du2 du1') dx.
inline double darboux_form(const TangentVector& du1, const TangentVector& du2,
                           const OrbitParams& params) {
  detail::require_chart(du1, Chart::darboux, "darboux_form");
  detail::require_chart(du2, Chart::darboux, "darboux_form");
  const PeriodicFn d1 = derivative(du1.delta, 1);
  const PeriodicFn d2 = derivative(du2.delta, 1);
  PeriodicFn integrand;
  const std::size_t n = du1.delta.grid_size();
  integrand.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    integrand.samples[j] = du1.delta.samples[j] * d2.samples[j] -
                           du2.delta.samples[j] * d1.samples[j];
  return (params.c / 24.0) * integrate(integrand);
}

/// Linearization of the chart maps: delta u in terms of delta f.
///   hyperbolic:  du = alpha df + df'/f'
///   parabolic:   du = df'/f'
///   teichmuller: du = tan(f/2) df + df'/f' + cot((x-y)/2) df(y)/f'(y),
/// where the pole terms cancel at x = y (series evaluation in the window).
inline TangentVector pushforward_tangent(const QuasiPeriodicFn& f, const TangentVector& df,
                                         const OrbitParams& params) {
  detail::require_chart(df, Chart::diffeo, "pushforward_tangent");
  params.validate();
  const std::size_t n = f.grid_size();
  const PeriodicFn fp = derivative(f, 1);
  const PeriodicFn dfp = derivative(df.delta, 1);
  TangentVector out;
  out.chart = Chart::darboux;
  out.delta.samples.resize(n);

  if (params.kind != OrbitKind::teichmuller) {
    const double alpha = params.alpha();
    for (std::size_t j = 0; j < n; ++j)
      out.delta.samples[j] = alpha * df.delta.samples[j] + dfp.samples[j] / fp.samples[j];
    return out;
  }

  const auto [y, z] = teichmuller_marked_points(f);
  (void)z;
  QPEvaluator fe(f);
  TrigInterpolant idf(df.delta.samples);
  const double d1 = fe.derivative(y, 1);
  const double dfy = idf.value(y);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = f.grid_x(j);
    const double eps = detail::wrap_to_pi(x - y);
    const double smooth = dfp.samples[j] / fp.samples[j];
    if (eps == 0.0) {
      // delta u(y) = delta(-log f'(y)) = (f''(y) df(y)/f'(y) - df'(y)) / f'(y)
      out.delta.samples[j] =
          (fe.derivative(y, 2) * dfy / d1 - idf.derivative(y, 1)) / d1;
      continue;
    }
    if (std::abs(eps) >= detail::kWindowHalfWidth) {
      const double t1 = std::tan(0.5 * f.grid_value(j)) * df.delta.samples[j];
      const double t3 = (dfy / d1) / std::tan(0.5 * eps);
      out.delta.samples[j] = t1 + t3 + smooth;
      continue;
    }
    // window: tan(f/2) = -cot(q), q = (f(x) - pi)/2; expand the 1/q and 1/w
    // poles (w = eps/2) and cancel them against each other:
    //   D = df(y)/(d1 w) - df(x)/q = (df(y) r - poly) / (d1 w (1 + r)),
    // with q = d1 w (1 + r) and poly = df(x) - df(y), both in series.
    const double d2 = fe.derivative(y, 2);
    const double d3 = fe.derivative(y, 3);
    const double d4 = fe.derivative(y, 4);
    const double d5 = fe.derivative(y, 5);
    const double a1 = d2 / (2.0 * d1), a2 = d3 / (6.0 * d1), a3 = d4 / (24.0 * d1),
                 a4 = d5 / (120.0 * d1);
    const double r = eps * (a1 + eps * (a2 + eps * (a3 + eps * a4)));
    const double w = 0.5 * eps;
    // carry the root residual f(y) - pi into q (see log_sin_ratio)
    const double res =
        0.5 * (fe.winding() * y + fe.periodic_part().value_compensated(y) - kPi) / (d1 * w);
    const double q = d1 * w * (1.0 + r + res);
    const double e1 = idf.derivative(y, 1);
    const double e2 = idf.derivative(y, 2);
    const double e3 = idf.derivative(y, 3);
    const double e4 = idf.derivative(y, 4);
    const double dfx = df.delta.samples[j];
    const double poly = eps * (e1 + eps * (e2 / 2.0 + eps * (e3 / 6.0 + eps * e4 / 24.0)));
    const double D = (dfy * (r + res) - poly) / q;
    const double tail = (q / 3.0 + q * q * q / 45.0) * dfx -
                        (w / 3.0 + w * w * w / 45.0) * dfy / d1;
    out.delta.samples[j] = D + tail + smooth;
  }
  return out;
}

/// Moment density in the f-chart: b^f(x) = b0 f'^2 + (c/12) S(f).
inline PeriodicFn moment_density(const QuasiPeriodicFn& f, const OrbitParams& params) {
  params.validate();
  const PeriodicFn fp = derivative(f, 1);
  const PeriodicFn s = schwarzian(f);
  PeriodicFn out;
  out.samples.resize(f.grid_size());
  for (std::size_t j = 0; j < out.samples.size(); ++j)
    out.samples[j] = params.b0 * fp.samples[j] * fp.samples[j] + (params.c / 12.0) * s.samples[j];
  return out;
}

/// Moment density in the Darboux chart: (c/12)(u'' - u'^2/2); valid for the
/// hyperbolic and parabolic charts.
inline PeriodicFn moment_density(const DarbouxField& field, const OrbitParams& params) {
  params.validate();
  if (params.kind == OrbitKind::teichmuller)
    throw std::invalid_argument("moment_density: teichmuller fields carry marked points, pass a TeichPoint");
  const PeriodicFn up = derivative(field.u, 1);
  const PeriodicFn upp = derivative(field.u, 2);
  PeriodicFn out;
  out.samples.resize(up.samples.size());
  for (std::size_t j = 0; j < out.samples.size(); ++j)
    out.samples[j] = (params.c / 12.0) * (upp.samples[j] - 0.5 * up.samples[j] * up.samples[j]);
  return out;
}

/// Moment density on the Teichmuller model:
///   (c/12) ( u'' - u'^2/2 + u' cot((x-y)/2) + 1/2 ),
/// which at the section y = pi is the familiar -u' tan(x/2) form. Requires
/// u'(y) = 0 (the cot pole is removable only then).
inline PeriodicFn moment_density(const TeichPoint& p, const OrbitParams& params) {
  params.validate();
  if (params.kind != OrbitKind::teichmuller)
    throw std::invalid_argument("moment_density: TeichPoint requires teichmuller params");
  if (std::abs(teichmuller_uprime_at_y(p)) > 1e-6)
    throw std::domain_error("moment_density: u'(y) must vanish on the Teichmuller model");
  const std::size_t n = p.u.grid_size();
  const PeriodicFn up = derivative(PeriodicFn{p.u.samples}, 1);
  const PeriodicFn upp = derivative(PeriodicFn{p.u.samples}, 2);
  TrigInterpolant iu(p.u.samples);
  PeriodicFn out;
  out.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = p.u.grid_x(j);
    const double eps = detail::wrap_to_pi(x - p.y);
    double cot_term;
    if (std::abs(eps) < detail::kWindowHalfWidth) {
      const double c2 = iu.derivative(p.y, 2);
      const double c3 = iu.derivative(p.y, 3);
      const double c4 = iu.derivative(p.y, 4);
      const double c5 = iu.derivative(p.y, 5);
      const double c6 = iu.derivative(p.y, 6);
      // u'(y+eps) cot(eps/2) with cot(w) = 1/w - w/3 - w^3/45 and u'(y) = 0
      // (the validated precondition; the interpolated u'(y) is pure noise and
      // would enter amplified by 2/eps):
      //   2 c2 + c3 eps + (c4/3 - c2/6) eps^2 + (c5/12 - c3/12) eps^3
      //   + (c6/60 - c4/36 - c2/360) eps^4
      cot_term = 2.0 * c2 + c3 * eps + (c4 / 3.0 - c2 / 6.0) * eps * eps +
                 (c5 / 12.0 - c3 / 12.0) * eps * eps * eps +
                 (c6 / 60.0 - c4 / 36.0 - c2 / 360.0) * eps * eps * eps * eps;
    } else {
      cot_term = up.samples[j] / std::tan(0.5 * eps);
    }
    out.samples[j] =
        (params.c / 12.0) * (upp.samples[j] - 0.5 * up.samples[j] * up.samples[j] + cot_term + 0.5);
  }
  return out;
}

/// Moment of rigid rotations mu_{S^1} = int b^f dx, evaluated in the f-chart.
inline double moment_s1(const QuasiPeriodicFn& f, const OrbitParams& params) {
  return integrate(moment_density(f, params));
}

/// mu_{S^1} in the Darboux chart: -(c/24) int u'^2 dx (u'' integrates away).
inline double moment_s1(const DarbouxField& field, const OrbitParams& params) {
  params.validate();
  const PeriodicFn up = derivative(field.u, 1);
  double s = 0.0;
  for (double v : up.samples) s += v * v;
  return -(params.c / 24.0) * s * kTwoPi / static_cast<double>(up.samples.size());
}

/// mu_{S^1} on the Teichmuller model, as the integral of the density.
inline double moment_s1(const TeichPoint& p, const OrbitParams& params) {
  return integrate(moment_density(p, params));
}

struct Lemma1Report {
  double residual = 0.0;  // sup norm of delta S(f) - (2 S(f) Y' + Y S(f)' + Y''')
  double step = 0.0;
  std::string warning;    // set when the step is outside the trustworthy range
};

/// Finite-difference check of the variational identity
///   delta S(f) = 2 S(f) Y' + Y S(f)' + Y''' ,   Y = delta f / f'.
/// The directional derivative is the central difference
/// [S(f + h df) - S(f - h df)] / 2h, evaluated through exact spectral
/// increments: derivatives of f +- h df are formed as d_k(f) +- h d_k(df)
/// (the transform is linear), and the difference of ratios is rearranged so
/// that the leading terms cancel algebraically rather than in floating point.
/// What remains is the genuine O(h^2) truncation of the central difference.
inline Lemma1Report verify_lemma1(const QuasiPeriodicFn& f, const PeriodicFn& df, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("verify_lemma1: step must be positive");
  const std::size_t n = f.grid_size();
  if (df.samples.size() != n) throw std::invalid_argument("verify_lemma1: grid mismatch");
  const PeriodicFn f1 = derivative(f, 1), f2 = derivative(f, 2), f3 = derivative(f, 3);
  const PeriodicFn e1 = derivative(df, 1), e2 = derivative(df, 2), e3 = derivative(df, 3);
  const PeriodicFn s = schwarzian(f);
  const PeriodicFn sp = derivative(s, 1);
  PeriodicFn y;
  y.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j) y.samples[j] = df.samples[j] / f1.samples[j];
  const PeriodicFn yp = derivative(y, 1);
  const PeriodicFn yppp = derivative(y, 3);
  Lemma1Report rep;
  rep.step = h;
  if (h > 1e-2)
    rep.warning = "step is large; the O(h^2) truncation may dominate the identity residual";
  else if (h < 1e-7)
    rep.warning = "step is small; roundoff in the difference quotient may dominate";
  for (std::size_t j = 0; j < n; ++j) {
    const double d1p = f1.samples[j] + h * e1.samples[j], d1m = f1.samples[j] - h * e1.samples[j];
    const double d2p = f2.samples[j] + h * e2.samples[j], d2m = f2.samples[j] - h * e2.samples[j];
    const double d3p = f3.samples[j] + h * e3.samples[j], d3m = f3.samples[j] - h * e3.samples[j];
    // d3p/d1p - d3m/d1m with the difference taken exactly
    const double t1 = (d1p * (2.0 * h * e3.samples[j]) - d3p * (2.0 * h * e1.samples[j])) /
                      (d1p * d1m);
    // (d2p/d1p)^2 - (d2m/d1m)^2 = (rp - rm)(rp + rm)
    const double rdiff = (d1p * (2.0 * h * e2.samples[j]) - d2p * (2.0 * h * e1.samples[j])) /
                         (d1p * d1m);
    const double rsum = d2p / d1p + d2m / d1m;
    const double fd = (t1 - 1.5 * rdiff * rsum) / (2.0 * h);
    const double rhs = 2.0 * s.samples[j] * yp.samples[j] + y.samples[j] * sp.samples[j] +
                       yppp.samples[j];
    rep.residual = std::max(rep.residual, std::abs(fd - rhs));
  }
  return rep;
}

}  // namespace darboux
