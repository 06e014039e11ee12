// orbit-bosonizer: partition functions and bilocal correlators of Schwarzian
// theories in the Gaussian Darboux chart, plus the numerical verification
// suites behind them.
//
// Subcommands:
//   z          partition function with its zeta-regularized assembly
//   correlate  one- or two-bilocal correlators by any of the four methods
//   sweep      CSV sweep of a parameter (t or eps)
//   expand     small-separation expansion: exact vs naive Taylor
//   verify     run a named invariant suite; exit 0 iff everything passes
//
// Exit codes: 0 all good, 1 numeric failure (or non-finite output), 2 usage.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "darboux/correlators.hpp"
#include "darboux/gaussian.hpp"
#include "darboux/orbit.hpp"
#include "darboux/report.hpp"
#include "darboux/verify.hpp"

using json = nlohmann::ordered_json;
using namespace darboux;

namespace {

constexpr const char* kSchemaVersion = "1";

struct CommonOptions {
  double c = 24.0;
  std::optional<double> b0;
  std::optional<double> alpha;
  double t = 1.0;
  std::size_t grid_n = 1024;
  std::size_t modes_n = 256;
  std::size_t mc_samples = 1000000;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tol_overrides;
  std::string out_path;
  std::string format = "json";

  OrbitParams params() const {
    if (b0 && alpha) throw CLI::ValidationError("--b0 and --alpha are mutually exclusive");
    if (alpha) return OrbitParams::hyperbolic_alpha(c, *alpha);
    if (b0) return OrbitParams::from_b0(c, *b0);
    return OrbitParams::hyperbolic_alpha(c, 1.0);
  }

  std::uint64_t seed_value() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("ORBIT_BOSONIZER_SEED")) {
      return std::strtoull(env, nullptr, 10);
    }
    return 0xb05e5eedULL;
  }

  std::map<std::string, double> tolerances() const {
    auto tol = default_tolerances();
    for (const auto& spec : tol_overrides) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos)
        throw CLI::ValidationError("--tol expects name=value, got: " + spec);
      const std::string name = spec.substr(0, eq);
      if (tol.find(name) == tol.end())
        throw CLI::ValidationError("unknown tolerance name: " + name);
      tol[name] = std::stod(spec.substr(eq + 1));
    }
    return tol;
  }
};

void add_common_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--c", opt.c, "central charge c > 0");
  cmd->add_option("--b0", opt.b0, "orbit representative b0 (<= 0 or c/24)");
  cmd->add_option("--alpha", opt.alpha, "hyperbolic winding alpha (b0 = -c alpha^2/24)");
  cmd->add_option("--t", opt.t, "weight parameter t > 0");
  cmd->add_option("--grid-n", opt.grid_n, "grid size (power of two >= 64)")
      ->check([](const std::string& v) -> std::string {
        const auto n = std::stoull(v);
        return (n >= 64 && is_power_of_two(n)) ? "" : "grid-n must be a power of two >= 64";
      });
  cmd->add_option("--modes-n", opt.modes_n, "Fourier modes for sampling");
  cmd->add_option("--mc-samples", opt.mc_samples, "Monte Carlo sample count");
  cmd->add_option("--seed", opt.seed, "RNG seed (fallback: ORBIT_BOSONIZER_SEED)");
  cmd->add_option("--tol", opt.tol_overrides, "tolerance override name=value (repeatable)");
  cmd->add_option("--out", opt.out_path, "output path (default: stdout)");
  cmd->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

// all doubles go through one formatter so identical runs are byte-identical
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json number(double v) { return json::parse(fmt(v)); }

bool json_all_finite(const json& j) {
  if (j.is_number_float()) return std::isfinite(j.get<double>());
  if (j.is_object() || j.is_array()) {
    for (const auto& item : j)
      if (!json_all_finite(item)) return false;
  }
  return true;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) {
    std::fprintf(stderr, "error: cannot open %s\n", out_path.c_str());
    return 1;
  }
  os << text;
  return os.good() ? 0 : 1;
}

json orbit_json(const OrbitParams& p, double t) {
  json j;
  j["c"] = number(p.c);
  j["b0"] = number(p.b0);
  j["alpha"] = number(p.alpha());
  j["kind"] = to_string(p.kind);
  j["t"] = number(t);
  return j;
}

// --- z ----------------------------------------------------------------------

int cmd_z(const CommonOptions& opt) {
  const auto params = opt.params();
  const auto z = partition_breakdown(params, opt.t);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["orbit"] = orbit_json(params, opt.t);
  j["pf_zeta"] = number(z.pf);
  j["det_zeta"] = number(z.det);
  j["classical_log"] = number(z.classical_log);
  j["z_assembled"] = number(z.assembled);
  j["z_closed"] = number(z.closed);
  j["log_z"] = number(log_partition_function(params, opt.t));
  j["mean_moment"] = number(mean_moment(params, opt.t));
  if (!json_all_finite(j)) return 1;
  return emit(j.dump(2) + "\n", opt.out_path);
}

// --- correlate ---------------------------------------------------------------

int cmd_correlate(const CommonOptions& opt, const std::vector<double>& points,
                  const std::string& ordering, const std::string& method) {
  const auto params = opt.params();
  json j;
  j["schema_version"] = kSchemaVersion;
  j["orbit"] = orbit_json(params, opt.t);
  j["points"] = json::array();
  for (double p : points) j["points"].push_back(number(p));
  j["ordering"] = ordering;
  j["method"] = method;
  json flags = json::array();

  const bool want_all = method == "both" || method == "all";
  auto want = [&](const char* m) { return want_all || method == m; };

  if (points.size() == 2) {
    const double x1 = points[0], x2 = points[1];
    json values;
    double reference = 0.0;
    if (want("closed")) {
      reference = one_point_closed(x1, x2, params, opt.t);
      values["closed"] = number(reference);
    }
    if (want("saddle-quadrature"))
      values["saddle-quadrature"] =
          number(one_point_quadrature(x1, x2, params, opt.t, CorrelatorMethod::saddle_quadrature));
    if (want("green-oracle"))
      values["green-oracle"] =
          number(one_point_quadrature(x1, x2, params, opt.t, CorrelatorMethod::green_oracle));
    if (want("monte-carlo")) {
      const auto mc = one_point_monte_carlo(x1, x2, params, opt.t, opt.modes_n, opt.mc_samples,
                                            opt.seed_value());
      values["monte-carlo"] = number(mc.mean);
      j["error_estimate"] = number(mc.stderror);
      if (mc.n_nonfinite > 0) flags.push_back("monte-carlo: non-finite samples excluded");
    }
    if (!j.contains("error_estimate")) j["error_estimate"] = number(1e-13);
    j["values"] = values;
    j["value"] = values.begin().value();
  } else {
    const double x1 = points[0], x2 = points[1], x3 = points[2], x4 = points[3];
    if (ordering == "to") {
      json values;
      if (want("closed")) values["closed"] = number(two_point_to_closed(x1, x2, x3, x4, params, opt.t));
      if (want("saddle-quadrature"))
        values["saddle-quadrature"] = number(two_point_to_quadrature(
            x1, x2, x3, x4, params, opt.t, CorrelatorMethod::saddle_quadrature, 1e-8));
      if (want("green-oracle"))
        values["green-oracle"] = number(
            two_point_to_quadrature(x1, x2, x3, x4, params, opt.t, CorrelatorMethod::green_oracle, 1e-8));
      if (want("monte-carlo")) {
        const auto mc = two_point_to_monte_carlo(x1, x2, x3, x4, params, opt.t, opt.modes_n,
                                                 opt.mc_samples, opt.seed_value());
        values["monte-carlo"] = number(mc.mean);
        j["error_estimate"] = number(mc.stderror);
      }
      if (!j.contains("error_estimate")) j["error_estimate"] = number(1e-8);
      j["values"] = values;
      j["value"] = values.begin().value();
    } else {
      // out-of-time-ordered: per-case adjudicated table
      const auto tol = opt.tolerances();
      const auto r =
          two_point_oto(x1, x2, x3, x4, params, opt.t, tolerance_of(tol, "oto_flag"));
      j["value"] = number(r.value);
      j["whole_domain_oracle"] = number(r.whole_domain_oracle);
      j["paper_total"] = number(r.paper_total);
      j["error_estimate"] = number(1e-9 * std::abs(r.value));
      json cases = json::array();
      for (const auto& cs : r.cases) {
        json c;
        c["label"] = cs.label;
        c["oracle"] = number(cs.oracle);
        c["paper_formula"] = number(cs.paper_closed);
        c["rel_discrepancy"] = number(cs.rel_discrepancy);
        c["flagged"] = cs.flagged;
        cases.push_back(c);
        if (cs.flagged)
          flags.push_back("case " + cs.label +
                          ": paper formula deviates from oracle, oracle is authoritative");
      }
      j["per_case"] = cases;
    }
  }
  j["flags"] = flags;
  if (!json_all_finite(j)) return 1;
  return emit(j.dump(2) + "\n", opt.out_path);
}

// --- sweep -------------------------------------------------------------------

int cmd_sweep(const CommonOptions& opt, const std::string& param, double lo, double hi,
              std::size_t steps, const std::vector<double>& points) {
  const auto params = opt.params();
  std::ostringstream os;
  os << "# schema_version=" << kSchemaVersion << "\n";
  std::vector<std::string> rows(steps);
  std::vector<std::string> header;

  auto run_rows = [&](auto&& row_fn) {
    const unsigned n_threads =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> pool;
    const std::size_t block = (steps + n_threads - 1) / n_threads;
    for (unsigned w = 0; w < n_threads; ++w) {
      const std::size_t b = w * block, e = std::min(steps, b + block);
      if (b >= e) break;
      pool.emplace_back([&, b, e]() {
        for (std::size_t i = b; i < e; ++i) rows[i] = row_fn(i);
      });
    }
    for (auto& th : pool) th.join();
  };

  if (param == "t") {
    header = {"t", "z", "log_z", "mean_moment"};
    const bool with_correlator = points.size() == 2;
    if (with_correlator) header.push_back("one_point_closed");
    run_rows([&](std::size_t i) {
      const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
      std::string row = fmt(t) + "," + fmt(partition_function(params, t)) + "," +
                        fmt(log_partition_function(params, t)) + "," + fmt(mean_moment(params, t));
      if (with_correlator)
        row += "," + fmt(one_point_closed(points[0], points[1], params, t));
      return row;
    });
  } else if (param == "eps") {
    header = {"eps", "exact", "naive"};
    const double slope3 = (2.0 * kPi * params.b0 + 0.5 / opt.t) / params.c;
    run_rows([&](std::size_t i) {
      const double e = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
      const double exact = kTwoPi * one_point_closed(0.0, e, params, opt.t);
      const double naive = kTwoPi * e - e * e * e * slope3;
      return fmt(e) + "," + fmt(exact) + "," + fmt(naive);
    });
  } else {
    throw CLI::ValidationError("--param must be t or eps");
  }

  os << header[0];
  for (std::size_t i = 1; i < header.size(); ++i) os << "," << header[i];
  os << "\n";
  for (const auto& row : rows) {
    if (row.find("nan") != std::string::npos || row.find("inf") != std::string::npos) return 1;
    os << row << "\n";
  }
  return emit(os.str(), opt.out_path);
}

// --- expand ------------------------------------------------------------------

int cmd_expand(const CommonOptions& opt, std::vector<double> eps) {
  const auto params = opt.params();
  const auto rep = taylor_vs_exact(params, opt.t, std::move(eps));
  json j;
  j["schema_version"] = kSchemaVersion;
  j["orbit"] = orbit_json(params, opt.t);
  j["eps"] = json::array();
  for (double e : rep.eps) j["eps"].push_back(number(e));
  j["exact_values"] = json::array();
  for (double v : rep.exact_values) j["exact_values"].push_back(number(v));
  j["naive_values"] = json::array();
  for (double v : rep.naive_values) j["naive_values"].push_back(number(v));
  json fits;
  fits["exact_c1"] = number(rep.exact_c1);
  fits["exact_c2"] = number(rep.exact_c2);
  fits["naive_c1"] = number(rep.naive_c1);
  fits["naive_c2"] = number(rep.naive_c2);
  j["fits"] = fits;
  json targets;
  targets["c1"] = number(rep.target_c1);
  targets["exact_c2"] = number(rep.target_exact_c2);
  targets["naive_c2"] = number(rep.target_naive_c2);
  j["targets"] = targets;
  if (!json_all_finite(j)) return 1;
  return emit(j.dump(2) + "\n", opt.out_path);
}

// --- verify ------------------------------------------------------------------

std::string record_csv(const ReportRecord& r) {
  std::ostringstream os;
  os << '"' << r.name << "\",\"" << r.inputs << "\"," << fmt(r.value) << "," << fmt(r.oracle)
     << "," << fmt(r.error) << "," << fmt(r.tolerance) << "," << (r.pass ? "true" : "false")
     << "," << fmt(r.wall_ms);
  return os.str();
}

json record_json(const ReportRecord& r) {
  json j;
  j["name"] = r.name;
  j["inputs"] = r.inputs;
  j["value"] = number(r.value);
  j["oracle"] = number(r.oracle);
  j["error"] = number(r.error);
  j["tolerance"] = number(r.tolerance);
  j["pass"] = r.pass;
  j["wall_ms"] = number(r.wall_ms);
  return j;
}

int cmd_verify(const CommonOptions& opt, const std::string& suite, bool fast) {
  VerifySettings settings;
  settings.params = opt.params();
  settings.t = opt.t;
  settings.grid_n = opt.grid_n;
  settings.seed = opt.seed_value();
  settings.mc_modes = opt.modes_n;
  settings.mc_samples = opt.mc_samples;
  settings.tol = opt.tolerances();
  if (fast) {
    settings.charts_trials = 20;
    settings.symplectic_trials = 20;
    settings.lemma_trials = 20;
    settings.saddle_green_trials = 200;
    settings.correlator_trials = 10;
    settings.to_trials = 5;
    settings.oto_trials = 1;
    settings.heavy_mc = false;
  }
  const auto records = run_suite(suite, settings);

  std::ostringstream os;
  if (opt.format == "csv") {
    os << "# schema_version=" << kSchemaVersion << "\n";
    os << "name,inputs,value,oracle,error,tolerance,pass,wall_ms\n";
    for (const auto& r : records) os << record_csv(r) << "\n";
  } else {
    for (const auto& r : records) os << record_json(r).dump() << "\n";
  }
  const int io_rc = emit(os.str(), opt.out_path);
  if (io_rc != 0) return io_rc;
  for (const auto& r : records)
    if (!std::isfinite(r.error)) return 1;
  return all_pass(records) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Darboux-chart bosonization of Schwarzian theories: partition functions, "
               "bilocal correlators, and their verification suites"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  CommonOptions opt;

  auto* z = app.add_subcommand("z", "partition function and its regularized assembly");
  add_common_options(z, opt);

  auto* correlate = app.add_subcommand("correlate", "bilocal correlators");
  add_common_options(correlate, opt);
  std::vector<double> points;
  std::string ordering = "to";
  std::string method = "closed";
  correlate->add_option("--points", points, "2 or 4 insertion points in [0, 2pi)")
      ->required()
      ->delimiter(',');
  correlate->add_option("--ordering", ordering, "ordering of 4-point insertions")
      ->check(CLI::IsMember({"to", "oto"}));
  correlate->add_option("--method", method, "evaluation method")
      ->check(CLI::IsMember(
          {"closed", "saddle-quadrature", "green-oracle", "monte-carlo", "both", "all"}));

  auto* sweep = app.add_subcommand("sweep", "CSV sweep over t or eps");
  add_common_options(sweep, opt);
  std::string sweep_param = "t";
  double sweep_min = 0.5, sweep_max = 5.0;
  std::size_t sweep_steps = 10;
  std::vector<double> sweep_points;
  sweep->add_option("--param", sweep_param, "swept parameter: t or eps");
  sweep->add_option("--min", sweep_min, "lower end of the sweep");
  sweep->add_option("--max", sweep_max, "upper end of the sweep");
  sweep->add_option("--steps", sweep_steps, "number of grid points (>= 2)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  sweep->add_option("--points", sweep_points, "insertion pair for correlator columns")
      ->delimiter(',');

  auto* expand = app.add_subcommand("expand", "classical vs quantum small-separation expansion");
  add_common_options(expand, opt);
  std::vector<double> eps_list;
  expand->add_option("--eps", eps_list, "eps grid in (0, 0.1] (default: geometric)")
      ->delimiter(',');

  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  add_common_options(verify, opt);
  std::string suite = "all";
  bool fast = false;
  verify->add_option("suite", suite, "charts|symplectic|lemma1|gaussian|correlators|all")
      ->check(CLI::IsMember({"charts", "symplectic", "lemma1", "gaussian", "correlators", "all"}));
  verify->add_flag("--fast", fast, "reduced trial counts, skip the heavy Monte Carlo");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (z->parsed()) return cmd_z(opt);
    if (correlate->parsed()) {
      if (points.size() != 2 && points.size() != 4) {
        std::fprintf(stderr, "error: --points expects 2 or 4 values\n");
        return 2;
      }
      if (points.size() == 4) {
        const bool to_ok = points[0] < points[1] && points[1] < points[2] && points[2] < points[3];
        const bool oto_ok = points[0] < points[2] && points[2] < points[1] && points[1] < points[3];
        if ((ordering == "to" && !to_ok) || (ordering == "oto" && !oto_ok)) {
          std::fprintf(stderr, "error: points do not satisfy the %s ordering\n", ordering.c_str());
          return 2;
        }
      }
      return cmd_correlate(opt, points, ordering, method);
    }
    if (sweep->parsed()) return cmd_sweep(opt, sweep_param, sweep_min, sweep_max, sweep_steps,
                                          sweep_points);
    if (expand->parsed()) return cmd_expand(opt, eps_list);
    if (verify->parsed()) return cmd_verify(opt, suite, fast);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 1;
  }
  return 2;
}
