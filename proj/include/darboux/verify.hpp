#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "darboux/charts.hpp"
#include "darboux/corpus.hpp"
#include "darboux/correlators.hpp"
#include "darboux/gaussian.hpp"
#include "darboux/orbit.hpp"
#include "darboux/qpfunc.hpp"
#include "darboux/report.hpp"
#include "darboux/symplectic.hpp"

namespace darboux {

/// Knobs of the verification suites. Trial counts default to the sizes the
/// acceptance criteria pin; tolerances come from default_tolerances() and can
/// be overridden per name.
struct VerifySettings {
  OrbitParams params = OrbitParams::hyperbolic_alpha(24.0, 1.0);
  double t = 1.0;
  std::size_t grid_n = 1024;
  std::uint64_t seed = 0xb05e5eedULL;
  std::size_t charts_trials = 100;
  std::size_t symplectic_trials = 100;
  std::size_t lemma_trials = 100;
  std::size_t saddle_closed_trials = 100;
  std::size_t saddle_green_trials = 1000;
  std::size_t correlator_trials = 50;
  std::size_t to_trials = 25;
  std::size_t oto_trials = 2;
  std::size_t mc_modes = 256;
  std::size_t mc_samples = 1000000;
  bool heavy_mc = true;
  std::map<std::string, double> tol = default_tolerances();

  double tol_of(const std::string& name) const { return tolerance_of(tol, name); }
};

namespace verify_detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Tracks the worst error over a corpus, remembering which trial produced it.
struct Worst {
  double error = 0.0;
  double value = 0.0;
  double oracle = 0.0;
  std::size_t trial = 0;

  void update(std::size_t i, double v, double o, double e) {
    if (!(e <= error)) {  // catches NaN as well
      error = e;
      value = v;
      oracle = o;
      trial = i;
    }
  }

  std::string inputs(std::size_t n) const {
    return std::to_string(n) + " trials, worst #" + std::to_string(trial);
  }
};

inline double sup_mod_constant(const std::vector<double>& a, const std::vector<double>& b) {
  double mean = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(a.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i] - mean));
  return worst;
}

inline double sup_mod_deck(const std::vector<double>& a, const std::vector<double>& b) {
  const double k = std::round((a[0] - b[0]) / kTwoPi);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i] - kTwoPi * k));
  return worst;
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline ReportRecord finish(ReportRecord r, const Stopwatch& sw) {
  r.wall_ms = sw.ms();
  return r;
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// charts: round trips, equivariance, group law, cocycle
// ---------------------------------------------------------------------------

inline std::vector<ReportRecord> run_charts_suite(const VerifySettings& s) {
  using namespace verify_detail;
  std::vector<ReportRecord> out;
  std::mt19937_64 rng(s.seed);
  const double alpha = s.params.kind == OrbitKind::hyperbolic ? s.params.alpha() : 1.0;
  const auto hyp = OrbitParams::hyperbolic_alpha(s.params.c, alpha);
  const auto n = s.grid_n;

  Worst hyp_rt, hyp_inv, par_rt, par_inv, tei_rt, tei_pt, tei_constraint, equiv, group, cocycle;
  Stopwatch sw;
  for (std::size_t i = 0; i < s.charts_trials; ++i) {
    const auto f = corpus::random_diffeo(rng, n, 5, 0.5);
    const auto h = corpus::random_diffeo(rng, n, 5, 0.45);

    // hyperbolic, both directions
    const auto uf = to_darboux_hyperbolic(f, hyp);
    const auto fback = from_darboux_hyperbolic(uf, hyp);
    hyp_rt.update(i, 0, 0, sup_mod_constant(fback.periodic, f.periodic));
    DarbouxField usyn;
    usyn.kind = OrbitKind::hyperbolic;
    usyn.u.winding = alpha;
    usyn.u.periodic = corpus::random_tangent(rng, n, 5, 0.6).samples;
    const auto uback = to_darboux_hyperbolic(from_darboux_hyperbolic(usyn, hyp), hyp);
    hyp_inv.update(i, 0, 0, sup_mod_constant(uback.u.periodic, usyn.u.periodic));

    // parabolic, both directions
    const auto pf = to_darboux_parabolic(f);
    par_rt.update(i, 0, 0, sup_mod_constant(from_darboux_parabolic(pf).periodic, f.periodic));
    DarbouxField psyn;
    psyn.kind = OrbitKind::parabolic;
    psyn.u.winding = 0.0;
    psyn.u.periodic = corpus::random_tangent(rng, n, 5, 0.6).samples;
    const auto pback = to_darboux_parabolic(from_darboux_parabolic(psyn));
    par_inv.update(i, 0, 0, sup_mod_constant(pback.u.periodic, psyn.u.periodic));

    // Teichmuller round trip and constraint preservation
    const auto tp = to_teichmuller(f);
    tei_constraint.update(i, teichmuller_uprime_at_y(tp), 0.0,
                          std::max(std::abs(teichmuller_uprime_at_y(tp)) * 1e2,
                                   std::abs(teichmuller_constraint_integral(tp))));
    const auto tback = from_teichmuller(tp);
    tei_rt.update(i, 0, 0, sup_mod_deck(tback.periodic, f.periodic));
    const auto tp2 = to_teichmuller(tback);
    tei_pt.update(i, 0, 0,
                  std::max({sup_diff(tp2.u.samples, tp.u.samples), std::abs(tp2.y - tp.y),
                            std::abs(tp2.z - tp.z)}));

    // equivariance and group law on the hyperbolic chart
    const auto lhs = to_darboux_hyperbolic(compose(f, h), hyp);
    const auto rhs = apply_diffeo_action(uf, h);
    equiv.update(i, 0, 0, sup_mod_constant(lhs.u.periodic, rhs.u.periodic));
    const auto g = corpus::random_diffeo(rng, n, 5, 0.4);
    const auto two_step = apply_diffeo_action(apply_diffeo_action(uf, h), g);
    const auto one_step = apply_diffeo_action(uf, compose(h, g));
    group.update(i, 0, 0, sup_mod_constant(two_step.u.periodic, one_step.u.periodic));

    // Schwarzian cocycle S(f o h) = (S(f) o h) h'^2 + S(h)
    const auto fh = compose(f, h);
    const PeriodicFn sfh = schwarzian(fh);
    const PeriodicFn sf = schwarzian(f);
    const PeriodicFn sh = schwarzian(h);
    const PeriodicFn hp = derivative(h, 1);
    TrigInterpolant isf(sf.samples);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double rhs_j = isf.value(h.grid_value(j)) * hp.samples[j] * hp.samples[j] +
                           sh.samples[j];
      worst = std::max(worst, std::abs(sfh.samples[j] - rhs_j));
    }
    cocycle.update(i, 0, 0, worst);
  }
  const auto trials = s.charts_trials;
  out.push_back(finish(make_record("charts/hyperbolic-roundtrip", hyp_rt.inputs(trials), hyp_rt.value,
                                   0.0, hyp_rt.error, s.tol_of("charts_roundtrip")), sw));
  out.push_back(finish(make_record("charts/hyperbolic-inverse-roundtrip", hyp_inv.inputs(trials), 0.0,
                                   0.0, hyp_inv.error, s.tol_of("charts_roundtrip")), sw));
  out.push_back(finish(make_record("charts/parabolic-roundtrip", par_rt.inputs(trials), 0.0, 0.0,
                                   par_rt.error, s.tol_of("charts_roundtrip")), sw));
  out.push_back(finish(make_record("charts/parabolic-inverse-roundtrip", par_inv.inputs(trials), 0.0,
                                   0.0, par_inv.error, s.tol_of("charts_roundtrip")), sw));
  out.push_back(finish(make_record("charts/teichmuller-roundtrip", tei_rt.inputs(trials), 0.0, 0.0,
                                   tei_rt.error, s.tol_of("charts_teich_roundtrip")), sw));
  out.push_back(finish(make_record("charts/teichmuller-point-roundtrip", tei_pt.inputs(trials), 0.0,
                                   0.0, tei_pt.error, s.tol_of("charts_teich_roundtrip")), sw));
  out.push_back(finish(make_record("charts/teichmuller-constraints", tei_constraint.inputs(trials),
                                   tei_constraint.value, 0.0, tei_constraint.error,
                                   s.tol_of("moment_transport")), sw));
  out.push_back(finish(make_record("charts/equivariance", equiv.inputs(trials), 0.0, 0.0, equiv.error,
                                   s.tol_of("equivariance")), sw));
  out.push_back(finish(make_record("charts/group-law", group.inputs(trials), 0.0, 0.0, group.error,
                                   s.tol_of("group_law")), sw));
  out.push_back(finish(make_record("charts/schwarzian-cocycle", cocycle.inputs(trials), 0.0, 0.0,
                                   cocycle.error, s.tol_of("cocycle")), sw));
  return out;
}

// ---------------------------------------------------------------------------
// symplectic: chart independence of omega and mu, form algebra, Hamiltonian
// ---------------------------------------------------------------------------

inline std::vector<ReportRecord> run_symplectic_suite(const VerifySettings& s) {
  using namespace verify_detail;
  std::vector<ReportRecord> out;
  std::mt19937_64 rng(s.seed + 1);
  const auto n = s.grid_n;
  const auto hyp = OrbitParams::hyperbolic_alpha(s.params.c, 1.0);
  const auto par = OrbitParams::parabolic(s.params.c);
  const auto tei = OrbitParams::teichmuller(s.params.c);

  Worst w_hyp, w_par, w_tei, m_hyp, m_par, m_tei, d_hyp, d_par, d_tei, anti, bilin, hamilton;
  Stopwatch sw;
  for (std::size_t i = 0; i < s.symplectic_trials; ++i) {
    const auto f = corpus::random_diffeo(rng, n, 5, 0.4);
    const TangentVector v{Chart::diffeo, corpus::random_tangent(rng, n, 5, 0.7)};
    const TangentVector w{Chart::diffeo, corpus::random_tangent(rng, n, 5, 0.7)};

    for (const auto* p : {&hyp, &par}) {
      const double lhs = kks_form(f, v, w, *p);
      const double rhs =
          darboux_form(pushforward_tangent(f, v, *p), pushforward_tangent(f, w, *p), *p);
      (p == &hyp ? w_hyp : w_par).update(i, lhs, rhs, std::abs(lhs - rhs));
    }
    // Teichmuller: the model form applies on the PSL(2,R) section
    const auto fs = corpus::random_section_diffeo(rng, n, 5, 0.4);
    const TangentVector vs{Chart::diffeo, corpus::random_section_tangent(rng, n, 5, 0.7)};
    const TangentVector ws{Chart::diffeo, corpus::random_section_tangent(rng, n, 5, 0.7)};
    const double tl = kks_form(fs, vs, ws, tei);
    const double tr =
        darboux_form(pushforward_tangent(fs, vs, tei), pushforward_tangent(fs, ws, tei), tei);
    w_tei.update(i, tl, tr, std::abs(tl - tr));

    // moment map and density transport
    m_hyp.update(i, moment_s1(f, hyp), moment_s1(to_darboux_hyperbolic(f, hyp), hyp),
                 std::abs(moment_s1(f, hyp) - moment_s1(to_darboux_hyperbolic(f, hyp), hyp)));
    m_par.update(i, moment_s1(f, par), moment_s1(to_darboux_parabolic(f), par),
                 std::abs(moment_s1(f, par) - moment_s1(to_darboux_parabolic(f), par)));
    m_tei.update(i, moment_s1(f, tei), moment_s1(to_teichmuller(f), tei),
                 std::abs(moment_s1(f, tei) - moment_s1(to_teichmuller(f), tei)));
    d_hyp.update(i, 0, 0,
                 sup_diff(moment_density(f, hyp).samples,
                          moment_density(to_darboux_hyperbolic(f, hyp), hyp).samples));
    d_par.update(i, 0, 0,
                 sup_diff(moment_density(f, par).samples,
                          moment_density(to_darboux_parabolic(f), par).samples));
    d_tei.update(i, 0, 0,
                 sup_diff(moment_density(f, tei).samples,
                          moment_density(to_teichmuller(f), tei).samples));

    // antisymmetry and bilinearity (exact algebra)
    anti.update(i, 0, 0, std::abs(kks_form(f, v, v, hyp)));
    TangentVector v2 = v;
    for (double& q : v2.delta.samples) q *= 2.0;
    bilin.update(i, 0, 0,
                 std::abs(kks_form(f, v2, w, hyp) - 2.0 * kks_form(f, v, w, hyp)));

    // omega(d_theta u, du) = -d/d eps mu_{S1}(u + eps du)
    const auto field = to_darboux_hyperbolic(f, hyp);
    const PeriodicFn dtheta = derivative(field.u, 1);
    const TangentVector du{Chart::darboux, corpus::random_tangent(rng, n, 5, 0.7)};
    const double lhs = darboux_form(TangentVector{Chart::darboux, dtheta}, du, hyp);
    const double h = 1e-5;
    DarbouxField up = field, um = field;
    for (std::size_t j = 0; j < n; ++j) {
      up.u.periodic[j] += h * du.delta.samples[j];
      um.u.periodic[j] -= h * du.delta.samples[j];
    }
    const double rhs = -(moment_s1(up, hyp) - moment_s1(um, hyp)) / (2.0 * h);
    hamilton.update(i, lhs, rhs, std::abs(lhs - rhs));
  }
  const auto trials = s.symplectic_trials;
  const double wt = s.tol_of("omega_transport"), mt = s.tol_of("moment_transport");
  out.push_back(finish(make_record("symplectic/omega-transport-hyperbolic", w_hyp.inputs(trials),
                                   w_hyp.value, w_hyp.oracle, w_hyp.error, wt), sw));
  out.push_back(finish(make_record("symplectic/omega-transport-parabolic", w_par.inputs(trials),
                                   w_par.value, w_par.oracle, w_par.error, wt), sw));
  out.push_back(finish(make_record("symplectic/omega-transport-teichmuller-section",
                                   w_tei.inputs(trials), w_tei.value, w_tei.oracle, w_tei.error, wt),
                       sw));
  out.push_back(finish(make_record("symplectic/moment-transport-hyperbolic", m_hyp.inputs(trials),
                                   m_hyp.value, m_hyp.oracle, m_hyp.error, mt), sw));
  out.push_back(finish(make_record("symplectic/moment-transport-parabolic", m_par.inputs(trials),
                                   m_par.value, m_par.oracle, m_par.error, mt), sw));
  out.push_back(finish(make_record("symplectic/moment-transport-teichmuller", m_tei.inputs(trials),
                                   m_tei.value, m_tei.oracle, m_tei.error, mt), sw));
  out.push_back(finish(make_record("symplectic/density-transport-hyperbolic", d_hyp.inputs(trials),
                                   0.0, 0.0, d_hyp.error, mt), sw));
  out.push_back(finish(make_record("symplectic/density-transport-parabolic", d_par.inputs(trials),
                                   0.0, 0.0, d_par.error, mt), sw));
  out.push_back(finish(make_record("symplectic/density-transport-teichmuller", d_tei.inputs(trials),
                                   0.0, 0.0, d_tei.error, mt), sw));
  out.push_back(finish(make_record("symplectic/antisymmetry", anti.inputs(trials), 0.0, 0.0,
                                   anti.error, s.tol_of("gauge_invariance")), sw));
  out.push_back(finish(make_record("symplectic/bilinearity", bilin.inputs(trials), 0.0, 0.0,
                                   bilin.error, s.tol_of("gauge_invariance")), sw));
  out.push_back(finish(make_record("symplectic/hamiltonian-rotation", hamilton.inputs(trials),
                                   hamilton.value, hamilton.oracle, hamilton.error,
                                   s.tol_of("hamiltonian_check")), sw));
  return out;
}

// ---------------------------------------------------------------------------
// lemma1: residual and O(h^2) scaling
// ---------------------------------------------------------------------------

inline std::vector<ReportRecord> run_lemma1_suite(const VerifySettings& s) {
  using namespace verify_detail;
  std::vector<ReportRecord> out;
  std::mt19937_64 rng(s.seed + 2);
  Worst res;
  std::vector<double> ratios;
  Stopwatch sw;
  for (std::size_t i = 0; i < s.lemma_trials; ++i) {
    const auto f = corpus::random_diffeo(rng, s.grid_n, 6, 0.45);
    const auto df = corpus::random_tangent(rng, s.grid_n, 6, 3.0);
    const double r1 = verify_lemma1(f, df, 1e-4).residual;
    const double r2 = verify_lemma1(f, df, 5e-5).residual;
    res.update(i, r1, 0.0, r1);
    ratios.push_back(r1 / r2);
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios[ratios.size() / 2];
  out.push_back(finish(make_record("lemma1/residual@h=1e-4", res.inputs(s.lemma_trials), res.value,
                                   0.0, res.error, s.tol_of("lemma1")), sw));
  out.push_back(finish(make_record("lemma1/h2-scaling-median-ratio",
                                   std::to_string(s.lemma_trials) + " trials", median, 4.0,
                                   std::abs(median - 4.0), s.tol_of("lemma1_ratio")), sw));
  return out;
}

// ---------------------------------------------------------------------------
// gaussian: partition function, mean moment, covariance, saddle identities
// ---------------------------------------------------------------------------

inline std::vector<ReportRecord> run_gaussian_suite(const VerifySettings& s) {
  using namespace verify_detail;
  std::vector<ReportRecord> out;
  std::mt19937_64 rng(s.seed + 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // criterion 1: Z over a 20-point (c, b0, t) grid
  {
    Stopwatch sw;
    Worst wz;
    std::size_t idx = 0;
    for (double c : {6.0, 12.0, 24.0, 36.0, 48.0}) {
      for (double b0 : {-2.0, -0.5, 0.0, -0.05}) {
        const double t = 0.3 + 0.25 * static_cast<double>(idx % 7);
        const auto p = b0 == 0.0 ? OrbitParams::parabolic(c) : OrbitParams::hyperbolic(c, b0);
        const auto z = partition_breakdown(p, t);
        const double rel = std::abs(z.assembled - z.closed) / std::abs(z.closed);
        wz.update(idx++, z.assembled, z.closed, rel);
      }
    }
    out.push_back(finish(make_record("gaussian/z-assembly-identity", wz.inputs(idx), wz.value,
                                     wz.oracle, wz.error, s.tol_of("z_identity")), sw));
  }

  // criterion 2: <mu> vs d log Z/dt and the zeta prescription
  {
    Stopwatch sw;
    Worst fd_worst, zeta_worst;
    std::size_t idx = 0;
    for (double b0 : {-1.3, -0.4, 0.0}) {
      for (double t : {0.5, 1.0, 2.0, 3.5}) {
        const auto p = b0 == 0.0 ? OrbitParams::parabolic(s.params.c)
                                 : OrbitParams::hyperbolic(s.params.c, b0);
        const double h = 1e-5;
        const double fd =
            (log_partition_function(p, t + h) - log_partition_function(p, t - h)) / (2.0 * h);
        fd_worst.update(idx, mean_moment(p, t), fd, std::abs(mean_moment(p, t) - fd));
        zeta_worst.update(idx, mean_moment_zeta(p, t), mean_moment(p, t),
                          std::abs(mean_moment_zeta(p, t) - mean_moment(p, t)));
        ++idx;
      }
    }
    out.push_back(finish(make_record("gaussian/mean-moment-vs-dlogZ", fd_worst.inputs(idx),
                                     fd_worst.value, fd_worst.oracle, fd_worst.error,
                                     s.tol_of("mean_moment_fd")), sw));
    out.push_back(finish(make_record("gaussian/mean-moment-zeta-prescription", zeta_worst.inputs(idx),
                                     zeta_worst.value, zeta_worst.oracle, zeta_worst.error, 1e-15),
                         sw));
  }

  // covariance against its truncated mode sum
  {
    Stopwatch sw;
    Worst wcov;
    const auto p = s.params;
    const double t = s.t;
    std::size_t idx = 0;
    for (double theta : {0.0, 0.7, kPi, 2.3, 5.9}) {
      double oracle = 0.0;
      for (long m = 100000; m >= 1; --m)
        oracle += std::cos(m * theta) / (static_cast<double>(m) * static_cast<double>(m));
      oracle *= 12.0 / (kPi * p.c * t);
      const double val = covariance(theta, p, t);
      wcov.update(idx++, val, oracle, std::abs(val - oracle));
    }
    out.push_back(finish(make_record("gaussian/covariance-mode-sum", wcov.inputs(idx), wcov.value,
                                     wcov.oracle, wcov.error, s.tol_of("covariance_oracle")), sw));
  }

  // criterion 6: saddle vs closed form and saddle vs Green
  {
    Stopwatch sw;
    Worst wc;
    for (std::size_t i = 0; i < s.saddle_closed_trials; ++i) {
      const double x1 = 0.1 + unit(rng), x2 = x1 + 0.5 + 2.0 * unit(rng);
      const double sp = x1 + (x2 - x1) * unit(rng);
      const double t = 0.4 + 1.6 * unit(rng);
      const double alpha = 0.2 + 1.3 * unit(rng);
      const double c = 6.0 + 30.0 * unit(rng);
      const auto p = OrbitParams::hyperbolic_alpha(c, alpha);
      const double action =
          effective_action(solve_saddle({{x1, sp, x2}, {-0.5, 1.0, -0.5}}, p, t));
      const double ct = c * t;
      const double closed =
          1.5 * (x2 - x1) / ct -
          3.0 / (4.0 * kPi * ct) * std::pow(2.0 * sp - x1 - x2 - ct * kPi * alpha / 3.0, 2);
      wc.update(i, action, closed, std::abs(action - closed));
    }
    out.push_back(finish(make_record("gaussian/saddle-vs-closed-form",
                                     wc.inputs(s.saddle_closed_trials), wc.value, wc.oracle,
                                     wc.error, s.tol_of("saddle_closed")), sw));
  }
  {
    Stopwatch sw;
    Worst wg, wrot;
    for (std::size_t i = 0; i < s.saddle_green_trials; ++i) {
      const int k = 2 + static_cast<int>(rng() % 5);
      MarkedConfig cfg;
      while (true) {
        std::vector<double> pts(k);
        for (auto& v : pts) v = unit(rng) * (kTwoPi - 1e-6);
        std::sort(pts.begin(), pts.end());
        bool ok = true;
        for (int j = 1; j < k; ++j)
          if (pts[j] - pts[j - 1] < 1e-3) ok = false;
        if (!ok) continue;
        cfg.points = pts;
        break;
      }
      cfg.coeffs.resize(k);
      double sum = 0.0;
      for (int j = 0; j < k - 1; ++j) {
        cfg.coeffs[j] = 2.0 * unit(rng) - 1.0;
        sum += cfg.coeffs[j];
      }
      cfg.coeffs[k - 1] = -sum;
      const double alpha = 0.2 + 1.3 * unit(rng);
      const double c = 6.0 + 30.0 * unit(rng);
      const double t = 0.3 + 2.0 * unit(rng);
      const auto p = OrbitParams::hyperbolic_alpha(c, alpha);
      const double saddle = effective_action(solve_saddle(cfg, p, t));
      const double green = exp_expectation(cfg, p, t);
      wg.update(i, saddle, green, std::abs(saddle - green));
      // rotation covariance of exponential observables (sum c_k = 0)
      if (cfg.points.back() < kTwoPi - 0.51) {
        MarkedConfig shifted = cfg;
        for (auto& v : shifted.points) v += 0.5;
        wrot.update(i, green, exp_expectation(shifted, p, t),
                    std::abs(green - exp_expectation(shifted, p, t)));
      }
    }
    out.push_back(finish(make_record("gaussian/saddle-vs-green", wg.inputs(s.saddle_green_trials),
                                     wg.value, wg.oracle, wg.error, s.tol_of("saddle_green")), sw));
    out.push_back(finish(make_record("gaussian/exp-observable-rotation-invariance",
                                     wrot.inputs(s.saddle_green_trials), wrot.value, wrot.oracle,
                                     wrot.error, s.tol_of("gauge_invariance")), sw));
  }

  // sampler variance and the n^{-1/2} Monte Carlo rate
  {
    Stopwatch sw;
    const auto p = s.params;
    const double t = s.t;
    const std::size_t draws = 20000;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
      const double re = sample_field(p, t, 4, s.seed + 7, i).modes[0].real();
      sum += re;
      sumsq += re * re;
    }
    const double nn = static_cast<double>(draws);
    const double var = sumsq / nn - (sum / nn) * (sum / nn);
    const double target = 3.0 / (kPi * p.c * t);
    const double z = std::abs(var - target) / (target * std::sqrt(2.0 / nn));
    out.push_back(finish(make_record("gaussian/sampler-mode-variance",
                                     std::to_string(draws) + " draws", var, target, z,
                                     s.tol_of("mc_sigmas")), sw));

    Stopwatch sw2;
    auto observable = [](const FourierField& field) {
      return std::exp(field.value(2.0) - field.value(1.0));
    };
    const auto small = mc_estimate(observable, p, t, 16, 4000, s.seed + 8);
    const auto big = mc_estimate(observable, p, t, 16, 16000, s.seed + 8);
    const double ratio = big.stderror / small.stderror;
    out.push_back(finish(make_record("gaussian/mc-rate-quarter-samples", "4000 vs 16000 samples",
                                     ratio, 0.5, std::abs(ratio - 0.5) / 0.5,
                                     s.tol_of("mc_rate")), sw2));
  }
  return out;
}

// ---------------------------------------------------------------------------
// correlators: route agreement, TO, OTO, expansion, Monte Carlo
// ---------------------------------------------------------------------------

inline std::vector<ReportRecord> run_correlators_suite(const VerifySettings& s) {
  using namespace verify_detail;
  std::vector<ReportRecord> out;
  std::mt19937_64 rng(s.seed + 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // criterion 7 (deterministic part): closed vs saddle-quadrature vs Green
  {
    Stopwatch sw;
    Worst w3, wrot;
    bool positive = true;
    for (std::size_t i = 0; i < s.correlator_trials; ++i) {
      const double c = 8.0 + 32.0 * unit(rng);
      const double t = 0.4 + 2.1 * unit(rng);
      const double b0 = (i % 5 == 0) ? 0.0 : -2.0 * unit(rng) - 0.02;
      const auto p = b0 == 0.0 ? OrbitParams::parabolic(c) : OrbitParams::hyperbolic(c, b0);
      const double x1 = 0.1 + 1.2 * unit(rng);
      const double x2 = x1 + 0.3 + 2.4 * unit(rng);
      const double closed = one_point_closed(x1, x2, p, t);
      positive = positive && closed > 0.0;
      const double saddle =
          one_point_quadrature(x1, x2, p, t, CorrelatorMethod::saddle_quadrature);
      const double green = one_point_quadrature(x1, x2, p, t, CorrelatorMethod::green_oracle);
      const double rel = std::max(std::abs(saddle - closed), std::abs(green - closed)) /
                         std::abs(closed);
      w3.update(i, closed, saddle, rel);
      if (x2 + 0.4 < kTwoPi) {
        const double rot = one_point_closed(x1 + 0.4, x2 + 0.4, p, t);
        wrot.update(i, closed, rot, std::abs(rot - closed) / std::abs(closed));
      }
    }
    out.push_back(finish(make_record("correlators/one-point-three-routes",
                                     w3.inputs(s.correlator_trials), w3.value, w3.oracle, w3.error,
                                     s.tol_of("bilocal_routes")), sw));
    out.push_back(finish(make_record("correlators/one-point-rotation-invariance",
                                     wrot.inputs(s.correlator_trials), wrot.value, wrot.oracle,
                                     wrot.error, s.tol_of("rotation_invariance")), sw));
    out.push_back(finish(make_record("correlators/one-point-positivity",
                                     std::to_string(s.correlator_trials) + " trials",
                                     positive ? 1.0 : 0.0, 1.0, positive ? 0.0 : 1.0, 0.5), sw));
  }

  // criterion 8: time-ordered two-point, closed vs 2D quadrature
  {
    Stopwatch sw;
    Worst wto;
    for (std::size_t i = 0; i < s.to_trials; ++i) {
      const double c = 10.0 + 24.0 * unit(rng);
      const double t = 0.5 + 1.2 * unit(rng);
      const double alpha = 0.3 + 1.0 * unit(rng);
      const auto p = OrbitParams::hyperbolic_alpha(c, alpha);
      const double x1 = 0.2 + 0.4 * unit(rng);
      const double x2 = x1 + 0.4 + 0.7 * unit(rng);
      const double x3 = x2 + 0.3 + 0.7 * unit(rng);
      const double x4 = x3 + 0.4 + 0.8 * unit(rng);
      const double closed = two_point_to_closed(x1, x2, x3, x4, p, t);
      const double quad = two_point_to_quadrature(x1, x2, x3, x4, p, t,
                                                  CorrelatorMethod::green_oracle, 1e-8);
      wto.update(i, closed, quad, std::abs(quad - closed) / std::abs(closed));
    }
    out.push_back(finish(make_record("correlators/to-closed-vs-quadrature",
                                     wto.inputs(s.to_trials), wto.value, wto.oracle, wto.error,
                                     s.tol_of("to_two_point")), sw));
  }

  // criterion 9: OTO decomposition, case I, and the per-case adjudication
  {
    Stopwatch sw;
    Worst wdec, wcase1;
    bool adjudicated = true;
    double worst_flagged_rel = 0.0;
    for (std::size_t i = 0; i < s.oto_trials; ++i) {
      const double c = 10.0 + 14.0 * unit(rng);
      const double t = 0.6 + 0.9 * unit(rng);
      const auto p = OrbitParams::hyperbolic_alpha(c, 0.4 + 0.8 * unit(rng));
      const double x1 = 0.2 + 0.3 * unit(rng);
      const double x3 = x1 + 0.5 + 0.5 * unit(rng);
      const double x2 = x3 + 0.6 + 0.6 * unit(rng);
      const double x4 = x2 + 0.7 + 0.6 * unit(rng);
      const auto r = two_point_oto(x1, x2, x3, x4, p, t, s.tol_of("oto_flag"));
      wdec.update(i, r.oracle_total, r.whole_domain_oracle,
                  std::abs(r.oracle_total - r.whole_domain_oracle) /
                      std::abs(r.whole_domain_oracle));
      wcase1.update(i, r.cases[0].paper_closed, r.cases[0].oracle,
                    std::abs(r.cases[0].rel_discrepancy));
      for (const auto& cs : r.cases) {
        if (!std::isfinite(cs.rel_discrepancy)) adjudicated = false;
        if (cs.flagged) worst_flagged_rel = std::max(worst_flagged_rel,
                                                     std::abs(cs.rel_discrepancy));
      }
    }
    out.push_back(finish(make_record("correlators/oto-domain-decomposition",
                                     wdec.inputs(s.oto_trials), wdec.value, wdec.oracle, wdec.error,
                                     s.tol_of("oto_decomposition")), sw));
    out.push_back(finish(make_record("correlators/oto-case-I", wcase1.inputs(s.oto_trials),
                                     wcase1.value, wcase1.oracle, wcase1.error,
                                     s.tol_of("oto_case1")), sw));
    out.push_back(finish(
        make_record("correlators/oto-cases-II-V-adjudicated",
                    "flagged mismatches up to " + std::to_string(worst_flagged_rel) +
                        " rel; oracle authoritative",
                    worst_flagged_rel, 0.0, adjudicated ? 0.0 : 1.0, 0.5),
        sw));
  }

  // criterion 10: classical vs quantum calculus
  {
    Stopwatch sw;
    const auto p = s.params.b0 <= 0.0 ? s.params : OrbitParams::hyperbolic_alpha(s.params.c, 1.0);
    const auto rep = taylor_vs_exact(p, s.t);
    out.push_back(finish(make_record("correlators/taylor-c1-exact", "Richardson fit", rep.exact_c1,
                                     rep.target_c1, std::abs(rep.exact_c1 - rep.target_c1),
                                     s.tol_of("taylor_c1")), sw));
    out.push_back(finish(make_record("correlators/taylor-c1-naive", "Richardson fit", rep.naive_c1,
                                     rep.target_c1, std::abs(rep.naive_c1 - rep.target_c1),
                                     s.tol_of("taylor_c1")), sw));
    out.push_back(finish(make_record("correlators/taylor-c2-naive", "Richardson fit", rep.naive_c2,
                                     0.0, std::abs(rep.naive_c2), s.tol_of("taylor_naive_c2")),
                         sw));
    out.push_back(finish(make_record("correlators/taylor-c2-exact", "Richardson fit", rep.exact_c2,
                                     rep.target_exact_c2,
                                     std::abs(rep.exact_c2 - rep.target_exact_c2) /
                                         rep.target_exact_c2,
                                     s.tol_of("taylor_exact_c2")), sw));
  }

  // criterion 7 (Monte Carlo part): the heavy bilocal check
  if (s.heavy_mc) {
    Stopwatch sw;
    const auto p = s.params.b0 < 0.0 ? s.params : OrbitParams::hyperbolic_alpha(s.params.c, 1.0);
    const double x1 = 1.0, x2 = 2.5;
    const auto mc = one_point_monte_carlo(x1, x2, p, s.t, s.mc_modes, s.mc_samples, s.seed + 9);
    const double closed = one_point_closed(x1, x2, p, s.t);
    const double z = std::abs(mc.mean - closed) / mc.stderror;
    out.push_back(finish(make_record("correlators/one-point-monte-carlo",
                                     std::to_string(s.mc_samples) + " samples, " +
                                         std::to_string(s.mc_modes) + " modes",
                                     mc.mean, closed, z, s.tol_of("mc_sigmas")), sw));
  }
  return out;
}

inline std::vector<ReportRecord> run_all_suites(const VerifySettings& s) {
  std::vector<ReportRecord> out;
  for (const auto* suite : {"charts", "symplectic", "lemma1", "gaussian", "correlators"}) {
    std::vector<ReportRecord> part;
    if (std::string(suite) == "charts") part = run_charts_suite(s);
    else if (std::string(suite) == "symplectic") part = run_symplectic_suite(s);
    else if (std::string(suite) == "lemma1") part = run_lemma1_suite(s);
    else if (std::string(suite) == "gaussian") part = run_gaussian_suite(s);
    else part = run_correlators_suite(s);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline std::vector<ReportRecord> run_suite(const std::string& name, const VerifySettings& s) {
  if (name == "charts") return run_charts_suite(s);
  if (name == "symplectic") return run_symplectic_suite(s);
  if (name == "lemma1") return run_lemma1_suite(s);
  if (name == "gaussian") return run_gaussian_suite(s);
  if (name == "correlators") return run_correlators_suite(s);
  if (name == "all") return run_all_suites(s);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace darboux
