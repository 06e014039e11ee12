#pragma once

// Random trigonometric-polynomial corpora for the verification suites: smooth circle diffeomorphisms
// with a safe margin min f' > 0, and smooth periodic tangent vectors. The
// spectral truncation error of these inputs at N >= 256 is below all test
// tolerances.

#include <cmath>
#include <random>
#include <vector>

#include "darboux/qpfunc.hpp"

namespace darboux::corpus {

struct TrigPoly {
  std::vector<double> a;  // cos coefficients, a[m] for mode m+1
  std::vector<double> b;  // sin coefficients

  double operator()(double x) const {
    double s = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m)
      s += a[m] * std::cos((m + 1) * x) + b[m] * std::sin((m + 1) * x);
    return s;
  }
  double derivative(double x) const {
    double s = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
      const double n = static_cast<double>(m + 1);
      s += n * (-a[m] * std::sin(n * x) + b[m] * std::cos(n * x));
    }
    return s;
  }
};

/// Random periodic trig polynomial with sum_n n(|a_n| + |b_n|) <= strength.
inline TrigPoly random_trig_poly(std::mt19937_64& rng, int modes, double strength) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  TrigPoly p;
  p.a.resize(modes);
  p.b.resize(modes);
  double weight = 0.0;
  for (int m = 0; m < modes; ++m) {
    p.a[m] = unit(rng);
    p.b[m] = unit(rng);
    weight += (m + 1) * (std::abs(p.a[m]) + std::abs(p.b[m]));
  }
  const double scale = weight > 0.0 ? strength / weight : 0.0;
  for (int m = 0; m < modes; ++m) {
    p.a[m] *= scale;
    p.b[m] *= scale;
  }
  return p;
}

/// Random diffeomorphism f(x) = x + p(x) with min f' >= 1 - strength.
inline QuasiPeriodicFn random_diffeo(std::mt19937_64& rng, std::size_t grid_n = 1024,
                                              int modes = 6, double strength = 0.55) {
  const TrigPoly p = random_trig_poly(rng, modes, strength);
  return sample_quasi_periodic([&](double x) { return x + p(x); }, 1.0, grid_n);
}

/// Random smooth periodic tangent with unit-ish amplitude.
inline PeriodicFn random_tangent(std::mt19937_64& rng, std::size_t grid_n = 1024,
                                          int modes = 6, double amplitude = 1.0) {
  const TrigPoly p = random_trig_poly(rng, modes, amplitude);
  return sample_periodic([&](double x) { return p(x); }, grid_n);
}

/// Trig polynomial with p(0) = p(pi) = 0 and p'(pi) = 0; x + p(x) then lies
/// in the PSL(2,R) section of the Teichmuller model (f(0)=0, f(pi)=pi,
/// f'(pi)=1), where the model symplectic form applies. Both parities are
/// populated, with the last coefficients solving the three constraints.
inline TrigPoly random_section_poly(std::mt19937_64& rng, int modes, double strength) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int m = modes;
  TrigPoly p;
  p.a.resize(m);
  p.b.resize(m);
  for (int k = 0; k < m; ++k) {
    p.a[k] = unit(rng);
    p.b[k] = unit(rng);
  }
  auto parity = [](int n) { return n % 2 == 0 ? 1.0 : -1.0; };
  // p(0) = sum a_n = 0 and p(pi) = sum a_n (-1)^n = 0: solve for a_{m-1}, a_m
  double s0 = 0.0, spi = 0.0;
  for (int k = 0; k < m - 2; ++k) {
    s0 += p.a[k];
    spi += parity(k + 1) * p.a[k];
  }
  // a_{m-1} + a_m = -s0 ; parity(m-1) a_{m-1} + parity(m) a_m = -spi
  const double pm1 = parity(m - 1), pm = parity(m);
  p.a[m - 2] = (-s0 * pm + spi) / (pm - pm1);
  p.a[m - 1] = -s0 - p.a[m - 2];
  // p'(pi) = sum n b_n (-1)^n = 0: solve for b_m
  double sp = 0.0;
  for (int k = 0; k < m - 1; ++k) sp += (k + 1) * parity(k + 1) * p.b[k];
  p.b[m - 1] = -sp / (m * parity(m));
  double weight = 0.0;
  for (int k = 0; k < m; ++k) weight += (k + 1) * (std::abs(p.a[k]) + std::abs(p.b[k]));
  const double scale = weight > 0.0 ? strength / weight : 0.0;
  for (int k = 0; k < m; ++k) {
    p.a[k] *= scale;
    p.b[k] *= scale;
  }
  return p;
}

inline QuasiPeriodicFn random_section_diffeo(std::mt19937_64& rng,
                                                      std::size_t grid_n = 1024, int modes = 6,
                                                      double strength = 0.5) {
  const TrigPoly p = random_section_poly(rng, modes, strength);
  return sample_quasi_periodic([&](double x) { return x + p(x); }, 1.0, grid_n);
}

inline PeriodicFn random_section_tangent(std::mt19937_64& rng,
                                                  std::size_t grid_n = 1024, int modes = 6,
                                                  double amplitude = 1.0) {
  const TrigPoly p = random_section_poly(rng, modes, amplitude);
  return sample_periodic([&](double x) { return p(x); }, grid_n);
}

}  // namespace darboux::corpus
