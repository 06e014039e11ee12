#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "darboux/gaussian.hpp"
#include "oracles.hpp"

using namespace darboux;

namespace {

MarkedConfig random_config(std::mt19937_64& rng, int k) {
  std::uniform_real_distribution<double> pos(0.0, kTwoPi - 1e-6);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  MarkedConfig cfg;
  while (true) {
    std::vector<double> pts(k);
    for (auto& p : pts) p = pos(rng);
    std::sort(pts.begin(), pts.end());
    bool ok = true;
    for (int i = 1; i < k; ++i)
      if (pts[i] - pts[i - 1] < 1e-3) ok = false;
    if (!ok) continue;
    cfg.points = pts;
    break;
  }
  cfg.coeffs.resize(k);
  double sum = 0.0;
  for (int i = 0; i < k - 1; ++i) {
    cfg.coeffs[i] = coeff(rng);
    sum += cfg.coeffs[i];
  }
  cfg.coeffs[k - 1] = -sum;
  return cfg;
}

}  // namespace

TEST_CASE("covariance endpoints against the truncated mode sum") {
  const auto params = OrbitParams::hyperbolic_alpha(12.0, 1.0);
  const double t = 1.0;
  const double g0 = covariance(0.0, params, t);
  REQUIRE(g0 == Catch::Approx(2.0 * kPi / (params.c * t)).margin(1e-14));
  REQUIRE(g0 == Catch::Approx(oracles::covariance_mode_sum(0.0, params.c, t, 100000)).margin(1e-5));
  const double gpi = covariance(kPi, params, t);
  REQUIRE(gpi == Catch::Approx(-kPi / (params.c * t)).margin(1e-14));
  REQUIRE(gpi ==
          Catch::Approx(oracles::covariance_mode_sum(kPi, params.c, t, 100000)).margin(1e-5));
}

TEST_CASE("covariance is even and 2pi-periodic") {
  const auto params = OrbitParams::parabolic(24.0);
  const double t = 0.7;
  for (double th : {0.3, 1.234, 2.9, 5.5}) {
    REQUIRE(covariance(kTwoPi - th, params, t) == Catch::Approx(covariance(th, params, t)).margin(1e-14));
    REQUIRE(covariance(-th, params, t) == Catch::Approx(covariance(th, params, t)).margin(1e-14));
  }
}

TEST_CASE("covariance tail bound of the mode sum") {
  const auto params = OrbitParams::parabolic(12.0);
  const double t = 1.3;
  const double exact = covariance(1.1, params, t);
  const double e100 = std::abs(exact - oracles::covariance_mode_sum(1.1, params.c, t, 100));
  const double e1000 = std::abs(exact - oracles::covariance_mode_sum(1.1, params.c, t, 1000));
  REQUIRE(e100 <= 12.0 / (kPi * params.c * t) / 100.0);
  REQUIRE(e1000 <= 12.0 / (kPi * params.c * t) / 1000.0);
}

TEST_CASE("covariance rejects non-positive weight") {
  const auto params = OrbitParams::parabolic(12.0);
  REQUIRE_THROWS_AS(covariance(1.0, params, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(covariance(1.0, params, -2.0), std::invalid_argument);
}

TEST_CASE("saddle slopes: symmetric and generic insertion point") {
  const auto params = OrbitParams::hyperbolic_alpha(24.0, 0.8);
  const double t = 1.5;
  const double x1 = 1.0, x2 = 4.0;

  const double mid = 0.5 * (x1 + x2);
  auto sol = solve_saddle({{x1, mid, x2}, {-0.5, 1.0, -0.5}}, params, t);
  REQUIRE(sol.base_slope == Catch::Approx(params.alpha()).margin(1e-14));

  const double s = 2.0;
  sol = solve_saddle({{x1, s, x2}, {-0.5, 1.0, -0.5}}, params, t);
  const double expect = params.alpha() - 3.0 / (params.c * t * kPi) * (2.0 * s - x1 - x2);
  REQUIRE(sol.base_slope == Catch::Approx(expect).margin(1e-14));
}

TEST_CASE("saddle solution invariants are exact") {
  std::mt19937_64 rng(77);
  const auto params = OrbitParams::hyperbolic_alpha(18.0, 1.1);
  const double t = 0.9;
  for (int trial = 0; trial < 50; ++trial) {
    const auto cfg = random_config(rng, 2 + static_cast<int>(rng() % 5));
    const auto sol = solve_saddle(cfg, params, t);
    // slope jumps
    for (std::size_t k = 0; k < cfg.size(); ++k) {
      const double jump = sol.slopes[k + 1] - sol.slopes[k];
      REQUIRE(jump == Catch::Approx(-12.0 * cfg.coeffs[k] / (params.c * t)).margin(1e-12));
    }
    // quasi-periodicity: int u' = 2 pi alpha
    double total = sol.slopes[0] * cfg.points[0];
    for (std::size_t k = 0; k < cfg.size(); ++k) {
      const double right = (k + 1 < cfg.size()) ? cfg.points[k + 1] : kTwoPi;
      total += sol.slopes[k + 1] * (right - cfg.points[k]);
    }
    REQUIRE(total == Catch::Approx(kTwoPi * params.alpha()).margin(1e-12));
    // continuity of the stored values under value_at
    for (std::size_t k = 0; k < cfg.size(); ++k)
      REQUIRE(sol.value_at(cfg.points[k]) == Catch::Approx(sol.values[k]).margin(1e-12));
  }
}

TEST_CASE("saddle rejects coincident points") {
  const auto params = OrbitParams::parabolic(12.0);
  REQUIRE_THROWS_AS(solve_saddle({{1.0, 1.0 + 1e-12, 2.0}, {-0.5, 1.0, -0.5}}, params, 1.0),
                    std::invalid_argument);
}

TEST_CASE("effective action reproduces the one-bilocal closed form") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double x1 = unit(rng), x2 = x1 + 1.0 + unit(rng);
    const double s = x1 + (x2 - x1) * unit(rng);
    const double t = 0.4 + unit(rng);
    const double alpha = 0.3 + unit(rng);
    const double c = 6.0 + 20.0 * unit(rng);
    const auto params = OrbitParams::hyperbolic_alpha(c, alpha);
    const auto sol = solve_saddle({{x1, s, x2}, {-0.5, 1.0, -0.5}}, params, t);
    const double ct = c * t;
    const double closed = 1.5 * (x2 - x1) / ct -
                          3.0 / (4.0 * kPi * ct) *
                              std::pow(2.0 * s - x1 - x2 - ct * kPi * alpha / 3.0, 2);
    REQUIRE(effective_action(sol) == Catch::Approx(closed).margin(1e-12));
  }
  // alpha = 0 at the midpoint: the quadratic term vanishes
  const auto par = OrbitParams::parabolic(12.0);
  const auto sol = solve_saddle({{1.0, 2.0, 3.0}, {-0.5, 1.0, -0.5}}, par, 1.0);
  REQUIRE(effective_action(sol) == Catch::Approx(1.5 * 2.0 / 12.0).margin(1e-14));
}

TEST_CASE("gauge shift leaves the action unchanged") {
  std::mt19937_64 rng(321);
  const auto params = OrbitParams::hyperbolic_alpha(24.0, 0.7);
  const auto cfg = random_config(rng, 4);
  const auto sol = solve_saddle(cfg, params, 1.2);
  const double shift = 0.37;
  double source_shift = 0.0;
  for (double c : cfg.coeffs) source_shift += c * shift;
  REQUIRE(std::abs(source_shift) <= 1e-12);  // sum c_k = 0 is the whole point
}

TEST_CASE("empty configuration reproduces the background action") {
  const auto params = OrbitParams::hyperbolic_alpha(24.0, 1.0);
  const double t = 1.7;
  REQUIRE(exp_expectation({{}, {}}, params, t) ==
          Catch::Approx(2.0 * kPi * params.b0 * t).margin(1e-13));
  REQUIRE(effective_action(solve_saddle({{}, {}}, params, t)) ==
          Catch::Approx(2.0 * kPi * params.b0 * t).margin(1e-13));
}

TEST_CASE("saddle-Green identity over random configurations") {
  std::mt19937_64 rng(999);
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha = 0.2 + 1.5 * (rng() % 1000) / 1000.0;
    const double c = 6.0 + 30.0 * (rng() % 1000) / 1000.0;
    const double t = 0.3 + 2.0 * (rng() % 1000) / 1000.0;
    const auto params = OrbitParams::hyperbolic_alpha(c, alpha);
    const auto cfg = random_config(rng, 2 + static_cast<int>(rng() % 5));
    const double saddle = effective_action(solve_saddle(cfg, params, t));
    const double green = exp_expectation(cfg, params, t);
    REQUIRE(saddle == Catch::Approx(green).margin(1e-10));
  }
}

TEST_CASE("exp_expectation of a single pair and rotation covariance") {
  const auto params = OrbitParams::hyperbolic_alpha(12.0, 0.9);
  const double t = 1.1;
  const double q = 1.0, p = 2.5;
  const double lhs = exp_expectation({{q, p}, {-1.0, 1.0}}, params, t);
  const double expect = params.alpha() * (p - q) + covariance(0.0, params, t) -
                        covariance(p - q, params, t) + 2.0 * kPi * params.b0 * t;
  REQUIRE(lhs == Catch::Approx(expect).margin(1e-13));
  // shifting all points leaves the value invariant (sum c_k = 0)
  for (double theta : {0.3, 1.7}) {
    REQUIRE(exp_expectation({{q + theta, p + theta}, {-1.0, 1.0}}, params, t) ==
            Catch::Approx(lhs).margin(1e-12));
  }
}

TEST_CASE("sampled modes have the advertised variance and covariance") {
  const auto params = OrbitParams::hyperbolic_alpha(12.0, 1.0);
  const double t = 1.0;
  const std::size_t draws = 100000;
  double sum_u = 0.0, sum_re1 = 0.0, sum_re1_sq = 0.0, sum_prod = 0.0;
  const double x = 1.0, y = 2.3;
  for (std::size_t s = 0; s < draws; ++s) {
    const auto field = sample_field(params, t, 24, 42, s);
    const double ux = field.value(x) - field.alpha * x;
    const double uy = field.value(y) - field.alpha * y;
    sum_u += ux;
    sum_prod += ux * uy;
    const double re1 = field.modes[0].real();
    sum_re1 += re1;
    sum_re1_sq += re1 * re1;
  }
  const double n = static_cast<double>(draws);
  const double g0 = covariance(0.0, params, t);
  // mean of u(x) - alpha x: zero within 4 sigma
  REQUIRE(std::abs(sum_u / n) <= 4.0 * std::sqrt(g0 / n));
  // variance of Re u_1: 3/(pi c t) within 3 sigma (chi^2 fluctuation ~ var sqrt(2/n))
  const double var1 = sum_re1_sq / n - (sum_re1 / n) * (sum_re1 / n);
  const double target = 3.0 / (kPi * params.c * t);
  REQUIRE(std::abs(var1 - target) <= 3.0 * target * std::sqrt(2.0 / n));
  // connected two-point function vs the closed covariance, truncated to 24 modes
  const double cov_target = oracles::covariance_mode_sum(x - y, params.c, t, 24);
  const double cov_sigma = g0 / std::sqrt(n);  // generous scale bound
  REQUIRE(std::abs(sum_prod / n - cov_target) <= 3.0 * cov_sigma);
}

TEST_CASE("sampling is reproducible and splittable") {
  const auto params = OrbitParams::parabolic(24.0);
  const auto a = sample_field(params, 1.0, 16, 7, 3);
  const auto b = sample_field(params, 1.0, 16, 7, 3);
  REQUIRE(a.modes == b.modes);
  const auto c = sample_field(params, 1.0, 16, 7, 4);
  REQUIRE(a.modes != c.modes);
}

TEST_CASE("mc_estimate of the constant observable") {
  const auto params = OrbitParams::parabolic(12.0);
  const auto r = mc_estimate([](const FourierField&) { return 1.0; }, params, 1.0, 8, 1000, 5);
  REQUIRE(r.mean == 1.0);
  REQUIRE(r.stderror == 0.0);
  REQUIRE(r.n_used == 1000);
}

TEST_CASE("mc_estimate matches exp_expectation within 3 sigma") {
  const auto params = OrbitParams::hyperbolic_alpha(12.0, 1.0);
  const double t = 1.0;
  const double q = 1.0, p = 2.5;
  const std::size_t modes = 48;
  auto observable = [&](const FourierField& field) {
    return std::exp(field.value(p) - field.value(q));
  };
  const auto r = mc_estimate(observable, params, t, modes, 40000, 2024);
  // truncated-covariance prediction at the sampled mode count
  const double log_mean = params.alpha() * (p - q) +
                          oracles::covariance_mode_sum(0.0, params.c, t, modes) -
                          oracles::covariance_mode_sum(p - q, params.c, t, modes);
  REQUIRE(std::abs(r.mean - std::exp(log_mean)) <= 3.0 * r.stderror);
  // and the untruncated closed form still sits inside 3 sigma at 48 modes
  const double closed = exp_expectation({{q, p}, {-1.0, 1.0}}, params, t) -
                        2.0 * kPi * params.b0 * t;
  REQUIRE(std::abs(r.mean - std::exp(closed)) <= 3.0 * r.stderror);
}

TEST_CASE("mc_estimate converges at the n^{-1/2} rate") {
  const auto params = OrbitParams::hyperbolic_alpha(12.0, 1.0);
  auto observable = [](const FourierField& field) { return std::exp(field.value(2.0) - field.value(1.0)); };
  const auto small = mc_estimate(observable, params, 1.0, 16, 4000, 31);
  const auto big = mc_estimate(observable, params, 1.0, 16, 16000, 31);
  REQUIRE(small.stderror / big.stderror == Catch::Approx(2.0).margin(0.4));
}

TEST_CASE("mc_estimate counts non-finite values") {
  const auto params = OrbitParams::parabolic(12.0);
  std::size_t counter = 0;
  auto observable = [&](const FourierField& field) {
    return field.modes[0].real() > 0.0 ? 1.0 : std::numeric_limits<double>::quiet_NaN();
  };
  const auto r = mc_estimate(observable, params, 1.0, 4, 1000, 17);
  (void)counter;
  REQUIRE(r.n_nonfinite > 0);
  REQUIRE(r.n_used + r.n_nonfinite == 1000);
  REQUIRE(r.mean == 1.0);
}

TEST_CASE("partition function closed form and assembly") {
  const auto parabolic = OrbitParams::parabolic(12.0);
  REQUIRE(partition_function(parabolic, kTwoPi) == Catch::Approx(1.0).margin(1e-14));

  const auto hyp = OrbitParams::hyperbolic_alpha(24.0, 1.0);  // b0 = -1
  REQUIRE(partition_function(hyp, 1.0) ==
          Catch::Approx(std::sqrt(1.0 / kTwoPi) * std::exp(-kTwoPi)).epsilon(1e-14));

  const auto z = partition_breakdown(hyp, 1.0);
  REQUIRE(z.pf == Catch::Approx(std::sqrt(24.0 * kPi / hyp.c)).margin(1e-15));
  REQUIRE(z.det == Catch::Approx(48.0 * kPi * kPi / (hyp.c * 1.0)).margin(1e-12));
  REQUIRE(z.assembled == Catch::Approx(z.closed).epsilon(1e-14));

  REQUIRE_THROWS_AS(partition_function(hyp, 0.0), std::invalid_argument);
}

TEST_CASE("mean moment: closed form, log-derivative, zeta prescription") {
  const auto parabolic = OrbitParams::parabolic(12.0);
  REQUIRE(mean_moment(parabolic, 1.0) == Catch::Approx(0.5).margin(1e-15));

  const auto hyp = OrbitParams::hyperbolic(24.0, -0.7);
  for (double t : {0.5, 1.0, 2.5}) {
    const double h = 1e-5;
    const double fd = (log_partition_function(hyp, t + h) - log_partition_function(hyp, t - h)) /
                      (2.0 * h);
    REQUIRE(mean_moment(hyp, t) == Catch::Approx(fd).margin(1e-8));
    REQUIRE(mean_moment_zeta(hyp, t) == Catch::Approx(mean_moment(hyp, t)).margin(1e-15));
    // truncated sum diverges linearly in the cutoff; the zeta value replaces
    // sum_{n>=1} 1 -> -1/2
    REQUIRE(mean_moment_truncated(hyp, t, 1000) ==
            Catch::Approx(2.0 * kPi * hyp.b0 - 1000.0 / t).margin(1e-12));
  }
}
