#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "darboux/fft.hpp"
#include "darboux/qpfunc.hpp"

namespace darboux {

/// Antiderivative A(x) = int_0^x e^{alpha s} g(s) ds of a smooth periodic g
/// given by grid samples. Each Fourier mode of g integrates in closed form,
/// so A inherits the spectral accuracy of the sample grid:
///   A(x) = e^{alpha x} T(x) - T(0) + lin*x,
/// with T periodic. Works for alpha = 0 (plain antiderivative; lin carries
/// the mean of g) and alpha != 0 (lin = 0).
class SpectralAntiderivative {
 public:
  SpectralAntiderivative(double alpha, const std::vector<double>& g_samples)
      : SpectralAntiderivative(alpha, spectrum(g_samples)) {}

  /// From the precomputed spectrum of g; the hot path for per-sample work.
  SpectralAntiderivative(double alpha, std::vector<std::complex<double>> coeff) : alpha_(alpha) {
    const std::size_t n = coeff.size();
    coeff[n / 2] = 0.0;  // Nyquist dropped; negligible for resolved integrands
    lin_ = 0.0;
    if (alpha_ == 0.0) {
      lin_ = coeff[0].real();
      coeff[0] = 0.0;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (alpha_ == 0.0 && k == 0) continue;
      const auto nu = static_cast<double>(signed_frequency(k, n));
      coeff[k] /= std::complex<double>(alpha_, nu);
    }
    tpart_ = TrigInterpolant(TrigInterpolant::from_coefficients, std::move(coeff));
    t0_ = tpart_.value(0.0);
  }

  double alpha() const { return alpha_; }

  double value(double x) const {
    return std::exp(alpha_ * x) * tpart_.value(x) - t0_ + lin_ * x;
  }

  /// A(2pi) = int over one period.
  double total() const { return (std::exp(alpha_ * kTwoPi) - 1.0) * t0_ + lin_ * kTwoPi; }

  /// Values at the sample grid nodes.
  std::vector<double> grid() const {
    const std::size_t n = tpart_.grid_size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
      out[j] = value(x);
    }
    return out;
  }

 private:
  double alpha_ = 0.0;
  double lin_ = 0.0;
  double t0_ = 0.0;
  TrigInterpolant tpart_;
};

}  // namespace darboux
