#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace darboux {

enum class OrbitKind { hyperbolic, parabolic, teichmuller };

inline const char* to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::hyperbolic: return "hyperbolic";
    case OrbitKind::parabolic: return "parabolic";
    case OrbitKind::teichmuller: return "teichmuller";
  }
  return "?";
}

/// Orbit data: central charge c > 0 and the constant representative b0.
/// Hyperbolic orbits have b0 = -c alpha^2 / 24 with alpha > 0, the parabolic
/// orbit has b0 = 0, and the Teichmuller orbit has b0 = c/24.
struct OrbitParams {
  double c = 0.0;
  double b0 = 0.0;
  OrbitKind kind = OrbitKind::hyperbolic;

  /// Winding of the Darboux field: sqrt(-24 b0 / c) for hyperbolic, else 0.
  double alpha() const { return kind == OrbitKind::hyperbolic ? std::sqrt(-24.0 * b0 / c) : 0.0; }

  static OrbitParams hyperbolic(double c, double b0) {
    if (!(c > 0.0)) throw std::invalid_argument("OrbitParams: c must be positive");
    if (!(b0 < 0.0)) throw std::invalid_argument("OrbitParams: hyperbolic orbit needs b0 < 0");
    return {c, b0, OrbitKind::hyperbolic};
  }

  static OrbitParams hyperbolic_alpha(double c, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("OrbitParams: alpha must be positive");
    return hyperbolic(c, -c * alpha * alpha / 24.0);
  }

  static OrbitParams parabolic(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("OrbitParams: c must be positive");
    return {c, 0.0, OrbitKind::parabolic};
  }

  static OrbitParams teichmuller(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("OrbitParams: c must be positive");
    return {c, c / 24.0, OrbitKind::teichmuller};
  }

  /// Classify from (c, b0); elliptic values are rejected (no chart for them).
  static OrbitParams from_b0(double c, double b0) {
    if (!(c > 0.0)) throw std::invalid_argument("OrbitParams: c must be positive");
    if (b0 < 0.0) return hyperbolic(c, b0);
    if (b0 == 0.0) return parabolic(c);
    if (std::abs(b0 - c / 24.0) <= 1e-12 * (1.0 + std::abs(b0))) return teichmuller(c);
    throw std::invalid_argument("OrbitParams: b0 = " + std::to_string(b0) +
                                " is neither <= 0 nor c/24 (no Darboux chart implemented)");
  }

  void validate() const {
    if (!(c > 0.0)) throw std::invalid_argument("OrbitParams: c must be positive");
    switch (kind) {
      case OrbitKind::hyperbolic:
        if (!(b0 < 0.0)) throw std::invalid_argument("OrbitParams: hyperbolic orbit needs b0 < 0");
        break;
      case OrbitKind::parabolic:
        if (b0 != 0.0) throw std::invalid_argument("OrbitParams: parabolic orbit needs b0 = 0");
        break;
      case OrbitKind::teichmuller:
        if (std::abs(b0 - c / 24.0) > 1e-12 * (1.0 + std::abs(b0)))
          throw std::invalid_argument("OrbitParams: teichmuller orbit needs b0 = c/24");
        break;
    }
  }
};

}  // namespace darboux
