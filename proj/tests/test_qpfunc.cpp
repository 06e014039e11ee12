#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "darboux/qpfunc.hpp"
#include "oracles.hpp"

using namespace darboux;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("derivative of identity is one") {
  const auto f = identity_diffeo(256);
  const PeriodicFn d = derivative(f, 1);
  for (double v : d.samples) REQUIRE(v == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("derivative of sin is spectrally accurate") {
  const auto f = sample_periodic([](double x) { return std::sin(x); }, 256);
  const PeriodicFn d2 = derivative(f, 2);
  const auto expect = sample_periodic([](double x) { return -std::sin(x); }, 256);
  REQUIRE(max_abs_diff(d2.samples, expect.samples) <= 1e-10);
}

TEST_CASE("third derivative against the analytic oracle") {
  const auto f =
      sample_quasi_periodic([](double x) { return x + 0.3 * std::sin(x); }, 1.0, 512);
  const PeriodicFn d3 = derivative(f, 3);
  const auto expect = sample_periodic([](double x) { return -0.3 * std::cos(x); }, 512);
  REQUIRE(max_abs_diff(d3.samples, expect.samples) <= 1e-9);
}

TEST_CASE("derivative rejects orders outside 1..3") {
  const auto f = identity_diffeo(64);
  REQUIRE_THROWS_AS(derivative(f, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(derivative(f, 4), std::invalid_argument);
}

TEST_CASE("composition with the identity is exact on the grid") {
  std::mt19937_64 rng(41);
  const auto f = corpus::random_diffeo(rng, 512);
  const auto id = identity_diffeo(512);
  REQUIRE(max_abs_diff(compose(f, id).periodic, f.periodic) <= 1e-12);
  REQUIRE(max_abs_diff(compose(id, f).periodic, f.periodic) <= 1e-12);
}

TEST_CASE("composition matches direct pointwise evaluation") {
  const auto f = sample_quasi_periodic([](double x) { return x + 0.2 * std::sin(x); }, 1.0, 1024);
  const auto h = sample_quasi_periodic([](double x) { return x + 0.1 * std::cos(x); }, 1.0, 1024);
  const auto fh = compose(f, h);
  // oracle: evaluate f(h(x_j)) from the closed-form expressions
  for (std::size_t j = 0; j < fh.grid_size(); j += 7) {
    const double x = fh.grid_x(j);
    const double hx = x + 0.1 * std::cos(x);
    const double direct = hx + 0.2 * std::sin(hx);
    REQUIRE(std::abs(fh.grid_value(j) - direct) <= 1e-10);
  }
}

TEST_CASE("composition rejects a non-monotone inner map") {
  const auto f = identity_diffeo(256);
  const auto bad = sample_quasi_periodic([](double x) { return x + 1.5 * std::sin(x); }, 1.0, 256);
  REQUIRE_THROWS_AS(compose(f, bad), std::domain_error);
}

TEST_CASE("invert_diffeo: identity and bisection oracle") {
  const auto id = identity_diffeo(256);
  REQUIRE(max_abs_diff(invert_diffeo(id).periodic, id.periodic) <= 1e-13);

  const auto f = sample_quasi_periodic([](double x) { return x + 0.3 * std::sin(x); }, 1.0, 512);
  const auto g = invert_diffeo(f);
  auto fexact = [](double x) { return x + 0.3 * std::sin(x); };
  for (std::size_t j = 0; j < g.grid_size(); j += 5) {
    const double y = g.grid_x(j);
    REQUIRE(std::abs(fexact(g.grid_value(j)) - y) <= 1e-10);
    const double oracle = oracles::bisect(fexact, y, y - 0.5, y + 0.5);
    REQUIRE(std::abs(g.grid_value(j) - oracle) <= 1e-10);
  }
}

TEST_CASE("invert_diffeo is an involution on the corpus") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = corpus::random_diffeo(rng);
    const auto ff = invert_diffeo(invert_diffeo(f));
    REQUIRE(max_abs_diff(ff.periodic, f.periodic) <= 1e-9);
  }
}

TEST_CASE("invert_diffeo rejects non-monotone input") {
  const auto bad = sample_quasi_periodic([](double x) { return x + 1.5 * std::sin(x); }, 1.0, 256);
  REQUIRE_THROWS_AS(invert_diffeo(bad), std::domain_error);
}

TEST_CASE("schwarzian of the identity vanishes") {
  const PeriodicFn s = schwarzian(identity_diffeo(256));
  REQUIRE(max_abs_sample(s) <= 1e-12);
}

TEST_CASE("schwarzian of g_alpha(y) = e^{alpha y}/alpha is -alpha^2/2") {
  for (double alpha : {1.0, 0.5, 2.0}) {
    auto g = [alpha](double y) { return std::exp(alpha * y) / alpha; };
    for (double x : {0.1, 1.0, 2.5}) {
      REQUIRE(schwarzian_fd(g, x) == Catch::Approx(-0.5 * alpha * alpha).margin(1e-8));
    }
  }
}

TEST_CASE("schwarzian of 2 tan(y/2) is 1/2") {
  auto g = [](double y) { return 2.0 * std::tan(0.5 * y); };
  for (double x : {0.3, 1.2, 2.0, -1.0}) {
    REQUIRE(schwarzian_fd(g, x) == Catch::Approx(0.5).margin(1e-8));
  }
}

TEST_CASE("schwarzian on the grid matches the analytic formula") {
  const auto f = sample_quasi_periodic([](double x) { return x + 0.3 * std::sin(x); }, 1.0, 512);
  const PeriodicFn s = schwarzian(f);
  for (std::size_t j = 0; j < s.grid_size(); j += 9) {
    const double x = s.grid_x(j);
    const double d1 = 1.0 + 0.3 * std::cos(x);
    const double d2 = -0.3 * std::sin(x);
    const double d3 = -0.3 * std::cos(x);
    const double expect = d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
    REQUIRE(s.samples[j] == Catch::Approx(expect).margin(1e-9));
  }
}

TEST_CASE("schwarzian rejects critical points") {
  const auto bad = sample_quasi_periodic([](double x) { return x + 1.5 * std::sin(x); }, 1.0, 256);
  REQUIRE_THROWS_AS(schwarzian(bad), std::domain_error);
}

TEST_CASE("check_diffeo reports") {
  const auto id = identity_diffeo(256);
  auto r = check_diffeo(id);
  REQUIRE(r.is_diffeo);
  REQUIRE(r.min_derivative == Catch::Approx(1.0).margin(1e-12));

  const auto bad = sample_quasi_periodic([](double x) { return x + 1.5 * std::sin(x); }, 1.0, 256);
  r = check_diffeo(bad);
  REQUIRE_FALSE(r.is_diffeo);
  REQUIRE(r.min_derivative < 0.0);

  const auto ok = sample_quasi_periodic([](double x) { return x + 0.5 * std::sin(x); }, 1.0, 256);
  r = check_diffeo(ok);
  REQUIRE(r.is_diffeo);
  REQUIRE(r.min_derivative == Catch::Approx(0.5).margin(1e-12));
  REQUIRE(r.quasiperiodicity_defect <= 1e-12);
}

TEST_CASE("property: Schwarzian cocycle S(f o h) = (S(f) o h) h'^2 + S(h)") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = corpus::random_diffeo(rng, 1024, 5, 0.45);
    const auto h = corpus::random_diffeo(rng, 1024, 5, 0.45);
    const auto fh = compose(f, h);
    const PeriodicFn lhs = schwarzian(fh);
    const PeriodicFn sf = schwarzian(f);
    const PeriodicFn sh = schwarzian(h);
    const PeriodicFn hp = derivative(h, 1);
    TrigInterpolant isf(sf.samples);
    double worst = 0.0;
    for (std::size_t j = 0; j < lhs.grid_size(); ++j) {
      const double rhs = isf.value(h.grid_value(j)) * hp.samples[j] * hp.samples[j] + sh.samples[j];
      worst = std::max(worst, std::abs(lhs.samples[j] - rhs));
    }
    REQUIRE(worst <= 1e-6);
  }
}

TEST_CASE("property: chain rule (f o h)' = (f' o h) h'") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const auto f = corpus::random_diffeo(rng, 1024, 5, 0.45);
    const auto h = corpus::random_diffeo(rng, 1024, 5, 0.45);
    const PeriodicFn lhs = derivative(compose(f, h), 1);
    const PeriodicFn fp = derivative(f, 1);
    const PeriodicFn hp = derivative(h, 1);
    TrigInterpolant ifp(fp.samples);
    double worst = 0.0;
    for (std::size_t j = 0; j < lhs.grid_size(); ++j)
      worst = std::max(worst, std::abs(lhs.samples[j] - ifp.value(h.grid_value(j)) * hp.samples[j]));
    REQUIRE(worst <= 1e-8);
  }
}
