#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "darboux/fft.hpp"
#include "darboux/orbit.hpp"
#include "darboux/rng.hpp"

namespace darboux {

/// Connected two-point function of the winding-stripped Gaussian field at
/// inverse weight ct: G(theta) = (12/(pi c t)) (pi^2/6 - pi theta/2 + theta^2/4)
/// on [0, 2pi], extended by evenness and periodicity. This is the closed form
/// of the mode sum  sum_{n != 0} (6/(pi c t n^2)) e^{i n theta}.
inline double covariance(double theta, const OrbitParams& params, double t) {
  if (!(params.c * t > 0.0)) throw std::invalid_argument("covariance: requires c t > 0");
  double th = std::fmod(std::abs(theta), kTwoPi);
  return 12.0 / (kPi * params.c * t) * (kPi * kPi / 6.0 - kPi * th / 2.0 + th * th / 4.0);
}

/// Insertion points p_k with exponential coefficients c_k; sum c_k = 0 keeps
/// exponential observables gauge invariant under u -> u + const.
struct MarkedConfig {
  std::vector<double> points;
  std::vector<double> coeffs;

  std::size_t size() const { return points.size(); }

  void validate() const {
    if (points.size() != coeffs.size())
      throw std::invalid_argument("MarkedConfig: points/coeffs size mismatch");
    if (points.empty()) return;
    double csum = 0.0;
    for (double c : coeffs) csum += c;
    if (std::abs(csum) > 1e-12)
      throw std::invalid_argument("MarkedConfig: coefficients must sum to zero");
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (!(points[k] >= 0.0 && points[k] < kTwoPi))
        throw std::invalid_argument("MarkedConfig: points must lie in [0, 2pi)");
      if (k > 0 && !(points[k] - points[k - 1] > 1e-9))
        throw std::invalid_argument("MarkedConfig: points must be strictly sorted, min gap 1e-9");
    }
  }
};

/// Piecewise-linear critical path of the quadratic effective action with
/// delta sources at the marked points. Segment k runs from breakpoint k-1
/// (or 0) to breakpoint k; the slope left of the first breakpoint equals the
/// slope right of the last one because the coefficients sum to zero.
struct SaddleSolution {
  std::vector<double> breakpoints;
  std::vector<double> slopes;        // slopes[k]: slope on [p_{k-1}, p_k); slopes[0] on [0, p_0)
  std::vector<double> values;        // u at the breakpoints, gauge u(0) = 0
  double base_slope = 0.0;           // slope at x = 0
  double action = 0.0;

  double value_at(double x) const {
    double u = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < breakpoints.size(); ++k) {
      if (x < breakpoints[k]) return u + slopes[k] * (x - prev);
      u += slopes[k] * (breakpoints[k] - prev);
      prev = breakpoints[k];
    }
    return u + slopes[0] * (x - prev);  // last segment has the base slope again
  }
};

/// Solve for the critical path: linear away from the sources, slope jump
/// -12 c_k / (c t) at p_k, and quasi-periodicity int_0^{2pi} u' dx = 2 pi alpha.
/// Exact linear algebra, no iteration.
inline SaddleSolution solve_saddle(const MarkedConfig& config, const OrbitParams& params, double t) {
  config.validate();
  if (!(params.c * t > 0.0)) throw std::invalid_argument("solve_saddle: requires c t > 0");
  const double alpha = params.alpha();
  const std::size_t k = config.size();
  SaddleSolution sol;
  sol.breakpoints = config.points;
  if (k == 0) {
    sol.base_slope = alpha;
    sol.slopes = {alpha};
    sol.action = -(params.c * t / 24.0) * kTwoPi * alpha * alpha;
    return sol;
  }
  // cumulative jumps after each breakpoint
  std::vector<double> cum(k, 0.0);
  double run = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    run += -12.0 * config.coeffs[j] / (params.c * t);
    cum[j] = run;
  }
  // quasi-periodicity fixes the base slope m:
  //   2 pi m + sum_j cum[j] * len_j = 2 pi alpha,
  // len_j the length of the segment following breakpoint j.
  double weighted = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double right = (j + 1 < k) ? config.points[j + 1] : kTwoPi;
    weighted += cum[j] * (right - config.points[j]);
  }
  const double m = alpha - weighted / kTwoPi;
  sol.base_slope = m;
  sol.slopes.resize(k + 1);
  sol.slopes[0] = m;
  for (std::size_t j = 0; j < k; ++j) sol.slopes[j + 1] = m + cum[j];
  // values at breakpoints, gauge u(0) = 0
  sol.values.resize(k);
  double u = 0.0, prev = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    u += sol.slopes[j] * (config.points[j] - prev);
    prev = config.points[j];
    sol.values[j] = u;
  }
  // action = -(ct/24) int u'^2 + sum c_k u(p_k)
  double quad = sol.slopes[0] * sol.slopes[0] * config.points[0];
  for (std::size_t j = 0; j < k; ++j) {
    const double right = (j + 1 < k) ? config.points[j + 1] : kTwoPi;
    quad += sol.slopes[j + 1] * sol.slopes[j + 1] * (right - config.points[j]);
  }
  double source = 0.0;
  for (std::size_t j = 0; j < k; ++j) source += config.coeffs[j] * sol.values[j];
  sol.action = -(params.c * t / 24.0) * quad + source;
  return sol;
}

/// Action value of a saddle solution; gauge independent because sum c_k = 0.
inline double effective_action(const SaddleSolution& sol) { return sol.action; }

/// Log of the normalized Gaussian expectation of exp(sum c_k u(p_k)),
/// including the classical background:
///   2 pi b0 t + alpha sum c_k p_k + (1/2) sum_{k,j} c_k c_j G(p_k - p_j).
/// This is the closed Green-function route; it must agree with the saddle
/// route effective_action(solve_saddle(config)) identically.
inline double exp_expectation(const MarkedConfig& config, const OrbitParams& params, double t) {
  config.validate();
  if (!(params.c * t > 0.0)) throw std::invalid_argument("exp_expectation: requires c t > 0");
  const double alpha = params.alpha();
  double result = 2.0 * kPi * params.b0 * t;
  for (std::size_t a = 0; a < config.size(); ++a) {
    result += alpha * config.coeffs[a] * config.points[a];
    for (std::size_t b = 0; b < config.size(); ++b)
      result += 0.5 * config.coeffs[a] * config.coeffs[b] *
                covariance(config.points[a] - config.points[b], params, t);
  }
  return result;
}

/// Gaussian field in mode representation: u(x) = alpha x + sum_{n!=0} u_n e^{inx}
/// with u_{-n} = conj(u_n); modes[n-1] stores u_n for n >= 1.
struct FourierField {
  double alpha = 0.0;
  std::vector<std::complex<double>> modes;

  double value(double x) const {
    double acc = alpha * x;
    for (std::size_t n = 1; n <= modes.size(); ++n) {
      const auto u = modes[n - 1];
      acc += 2.0 * (u.real() * std::cos(n * x) - u.imag() * std::sin(n * x));
    }
    return acc;
  }

  /// Periodic-part samples on a grid of size n (power of two, n > 2*modes).
  std::vector<double> periodic_samples(std::size_t n) const {
    if (n < 2 * (modes.size() + 1))
      throw std::invalid_argument("FourierField: grid too small for the mode content");
    std::vector<std::complex<double>> coeff(n, 0.0);
    for (std::size_t m = 1; m <= modes.size(); ++m) {
      coeff[m] = modes[m - 1];
      coeff[n - m] = std::conj(modes[m - 1]);
    }
    return grid_values(std::move(coeff));
  }
};

/// Draw the Gaussian field at weight e^{t mu_{S1}}: Re u_n and Im u_n are
/// independent centered normals with variance 3/(pi c t n^2). The stream for
/// mode n of sample s depends only on (seed, s, n), so sampling is
/// reproducible no matter how work is scheduled.
inline FourierField sample_field(const OrbitParams& params, double t, std::size_t n_modes,
                                 std::uint64_t seed, std::uint64_t sample_index = 0) {
  if (n_modes < 1) throw std::invalid_argument("sample_field: n_modes must be >= 1");
  if (!(params.c * t > 0.0)) throw std::invalid_argument("sample_field: requires c t > 0");
  FourierField field;
  field.alpha = params.alpha();
  field.modes.resize(n_modes);
  const double base = std::sqrt(3.0 / (kPi * params.c * t));
  for (std::size_t n = 1; n <= n_modes; ++n) {
    SplitMix64 gen(mix_labels(seed, sample_index, n));
    double re, im;
    normal_pair(gen, re, im);
    const double sigma = base / static_cast<double>(n);
    field.modes[n - 1] = {sigma * re, sigma * im};
  }
  return field;
}

struct MCResult {
  double mean = 0.0;
  double stderror = 0.0;
  std::size_t n_used = 0;
  std::size_t n_nonfinite = 0;
};

namespace detail {

inline double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace detail

/// Monte Carlo mean and standard error of an observable over independent
/// field draws. Samples are evaluated in parallel blocks but every value is
/// identified by its sample index and reduced by pairwise summation, so the
/// result is independent of the thread count.
inline MCResult mc_estimate(const std::function<double(const FourierField&)>& observable,
                            const OrbitParams& params, double t, std::size_t n_modes,
                            std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 100) throw std::invalid_argument("mc_estimate: n_samples must be >= 100");
  std::vector<double> values(n_samples);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(hw, 8));
  std::vector<std::thread> pool;
  const std::size_t block = (n_samples + n_threads - 1) / n_threads;
  for (unsigned w = 0; w < n_threads; ++w) {
    const std::size_t lo = w * block;
    const std::size_t hi = std::min(n_samples, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi]() {
      for (std::size_t s = lo; s < hi; ++s)
        values[s] = observable(sample_field(params, t, n_modes, seed, s));
    });
  }
  for (auto& th : pool) th.join();

  std::vector<double> finite;
  finite.reserve(n_samples);
  std::size_t bad = 0;
  for (double v : values) {
    if (std::isfinite(v)) finite.push_back(v); else ++bad;
  }
  MCResult out;
  out.n_nonfinite = bad;
  out.n_used = finite.size();
  if (finite.empty()) return out;
  const double n = static_cast<double>(finite.size());
  out.mean = detail::pairwise_sum(finite, 0, finite.size()) / n;
  std::vector<double> sq(finite.size());
  for (std::size_t i = 0; i < finite.size(); ++i) {
    const double d = finite[i] - out.mean;
    sq[i] = d * d;
  }
  const double var = detail::pairwise_sum(sq, 0, sq.size()) / std::max(1.0, n - 1.0);
  out.stderror = std::sqrt(var / n);
  return out;
}

/// zeta-regularized pieces of the partition function. The constants are the
/// documented regularized values; truncated mode products cannot reach them.
inline double pf_zeta(const OrbitParams& params) { return std::sqrt(24.0 * kPi / params.c); }
inline double det_zeta(const OrbitParams& params, double t) {
  return 48.0 * kPi * kPi / (params.c * t);
}

struct PartitionBreakdown {
  double pf = 0.0;
  double det = 0.0;
  double classical_log = 0.0;  // t mu_{S1}(u_cl) = 2 pi b0 t
  double assembled = 0.0;      // pf e^{classical} / sqrt(det)
  double closed = 0.0;         // (t/2pi)^{1/2} e^{2 pi b0 t}
};

inline PartitionBreakdown partition_breakdown(const OrbitParams& params, double t) {
  if (!(t > 0.0) || !(params.c > 0.0))
    throw std::invalid_argument("partition_function: requires t > 0 and c > 0");
  PartitionBreakdown z;
  z.pf = pf_zeta(params);
  z.det = det_zeta(params, t);
  z.classical_log = 2.0 * kPi * params.b0 * t;
  z.assembled = z.pf * std::exp(z.classical_log) / std::sqrt(z.det);
  z.closed = std::sqrt(t / kTwoPi) * std::exp(2.0 * kPi * params.b0 * t);
  return z;
}

/// Z(t) = Pf_zeta e^{t mu(u_cl)} / sqrt(det_zeta) = (t/2pi)^{1/2} e^{2 pi b0 t}.
/// The two routes are asserted equal to 1e-14 relative.
inline double partition_function(const OrbitParams& params, double t) {
  const PartitionBreakdown z = partition_breakdown(params, t);
  if (std::abs(z.assembled - z.closed) > 1e-14 * std::abs(z.closed))
    throw std::runtime_error("partition_function: assembly identity violated");
  return z.assembled;
}

inline double log_partition_function(const OrbitParams& params, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("log_partition_function: t > 0 required");
  return 0.5 * std::log(t / kTwoPi) + 2.0 * kPi * params.b0 * t;
}

/// <mu_{S1}> = d log Z / dt = 2 pi b0 + 1/(2t).
inline double mean_moment(const OrbitParams& params, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("mean_moment: t > 0 required");
  return 2.0 * kPi * params.b0 + 0.5 / t;
}

/// Same quantity through the zeta prescription: each mode contributes -1/t,
/// and sum_{n>=1} 1 -> zeta(0) = -1/2.
inline double mean_moment_zeta(const OrbitParams& params, double t) {
  const double zeta0 = -0.5;
  return 2.0 * kPi * params.b0 - zeta0 / t;
}

/// Truncated mode sum: 2 pi b0 - N/t. Divergent as N grows; kept as the
/// documentation of what the regularization replaces.
inline double mean_moment_truncated(const OrbitParams& params, double t, std::size_t n_modes) {
  return 2.0 * kPi * params.b0 - static_cast<double>(n_modes) / t;
}

}  // namespace darboux
