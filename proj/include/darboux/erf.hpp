#pragma once

#include <cmath>

namespace darboux {

// Error function after W. J. Cody's rational Chebyshev approximations
// (Math. Comp. 23 (1969), 631-638; coefficients as in netlib/specfun).
// Pinned in-repo so every platform evaluates the correlator formulas with
// bit-identical special-function values; absolute error is below 1e-15.

namespace detail_erf {

inline constexpr double kA[5] = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                                 3209.37758913846947, 0.185777706184603153};
inline constexpr double kB[4] = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                                 2844.23683343917062};
inline constexpr double kC[9] = {0.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                                 298.635138197400131,  881.95222124176909,  1712.04761263407058,
                                 2051.07837782607147,  1230.33935479799725, 2.15311535474403846e-8};
inline constexpr double kD[8] = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                                 1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                                 3439.36767414372164, 1230.33935480374942};
inline constexpr double kP[6] = {0.305326634961232344, 0.360344899949804439, 0.125781726111229246,
                                 0.0160837851487422766, 6.58749161529837803e-4,
                                 0.0163153871373020978};
inline constexpr double kQ[5] = {2.56852019228982242, 1.87295284992346047, 0.527905102951428412,
                                 0.0605183413124413191, 0.00233520497626869185};

inline constexpr double kInvSqrtPi = 0.56418958354775628695;
inline constexpr double kThresh = 0.46875;

/// erfc(y) e^{y^2} for y >= thresh (the e^{-y^2} factor is applied by the
/// caller in split form to preserve accuracy).
inline double erfc_scaled_core(double y) {
  if (y <= 4.0) {
    double xnum = kC[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
      xnum = (xnum + kC[i]) * y;
      xden = (xden + kD[i]) * y;
    }
    return (xnum + kC[7]) / (xden + kD[7]);
  }
  const double z = 1.0 / (y * y);
  double xnum = kP[5] * z;
  double xden = z;
  for (int i = 0; i < 4; ++i) {
    xnum = (xnum + kP[i]) * z;
    xden = (xden + kQ[i]) * z;
  }
  double r = z * (xnum + kP[4]) / (xden + kQ[4]);
  return (kInvSqrtPi - r) / y;
}

}  // namespace detail_erf

/// erf(x), odd, |error| < 1e-15 over all of R.
inline double erf_cody(double x) {
  using namespace detail_erf;
  const double y = std::abs(x);
  if (y <= kThresh) {
    const double z = y > 1.11e-16 ? y * y : 0.0;
    double xnum = kA[4] * z;
    double xden = z;
    for (int i = 0; i < 3; ++i) {
      xnum = (xnum + kA[i]) * z;
      xden = (xden + kB[i]) * z;
    }
    return x * (xnum + kA[3]) / (xden + kB[3]);
  }
  if (y >= 6.0) return x > 0.0 ? 1.0 : -1.0;  // erfc < 2.2e-17 here
  // erfc = e^{-y^2} * core, with e^{-y^2} split as in Cody to avoid the
  // rounding of y*y: y^2 = ysq^2 + (y-ysq)(y+ysq) with ysq = trunc(16 y)/16.
  const double core = erfc_scaled_core(y);
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  const double erfc = std::exp(-ysq * ysq) * std::exp(-del) * core;
  return x > 0.0 ? 1.0 - erfc : erfc - 1.0;
}

/// erfc(x) = 1 - erf(x), with full relative accuracy on the decaying tail.
inline double erfc_cody(double x) {
  using namespace detail_erf;
  if (x < -6.0) return 2.0;
  if (std::abs(x) <= kThresh) return 1.0 - erf_cody(x);
  const double y = std::abs(x);
  if (y >= 26.5) return x > 0.0 ? 0.0 : 2.0;
  const double core = erfc_scaled_core(y);
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  const double erfc = std::exp(-ysq * ysq) * std::exp(-del) * core;
  return x > 0.0 ? erfc : 2.0 - erfc;
}

/// erf(a) - erf(b) without the cancellation of two near-unit values: deep in
/// a tail the difference is taken between the complementary functions, which
/// carry full relative precision there.
inline double erf_diff(double a, double b) {
  if (a >= 0.5 && b >= 0.5) return erfc_cody(b) - erfc_cody(a);
  if (a <= -0.5 && b <= -0.5) return erfc_cody(-a) - erfc_cody(-b);
  return erf_cody(a) - erf_cody(b);
}

}  // namespace darboux
