#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace darboux {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 transform, unnormalized.
/// Forward uses e^{-i 2pi jk/N}, inverse e^{+i 2pi jk/N}. Twiddles come from
/// a directly evaluated table, not a recurrence, to keep coefficient noise at
/// the few-ulp level (high-order spectral derivatives amplify it by n^order).
inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("fft: size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::complex<double>> twiddle(n / 2);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t j = 0; j < n / 2; ++j) {
    const double ang = sign * kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    twiddle[j] = {std::cos(ang), std::sin(ang)};
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * twiddle[k * stride];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

/// Fourier coefficients c_k of real samples on the uniform grid x_j = 2pi j/N,
/// normalized so that f(x) = sum_k c_k e^{i nu(k) x} with nu(k) the signed
/// frequency below. Index k runs over [0, N).
inline std::vector<std::complex<double>> spectrum(const std::vector<double>& samples) {
  std::vector<std::complex<double>> a(samples.begin(), samples.end());
  fft_inplace(a, false);
  const double inv = 1.0 / static_cast<double>(a.size());
  for (auto& z : a) z *= inv;
  return a;
}

/// Signed frequency of spectrum index k: 0,1,...,N/2,-(N/2-1),...,-1.
/// The Nyquist bin k = N/2 is reported as +N/2.
inline long signed_frequency(std::size_t k, std::size_t n) {
  return k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

/// Real grid samples from coefficients normalized as in spectrum().
inline std::vector<double> grid_values(std::vector<std::complex<double>> coeff) {
  fft_inplace(coeff, true);
  std::vector<double> out(coeff.size());
  for (std::size_t j = 0; j < coeff.size(); ++j) out[j] = coeff[j].real();
  return out;
}

}  // namespace darboux
