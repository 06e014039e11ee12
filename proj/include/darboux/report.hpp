#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace darboux {

/// One verification check: the measured error metric against its tolerance.
/// pass holds exactly when error <= tolerance (and both are finite).
struct ReportRecord {
  std::string name;    // suite/check identifier, e.g. "charts/hyperbolic-roundtrip"
  std::string inputs;  // short descriptor: corpus size, worst trial, parameters
  double value = 0.0;  // measured quantity
  double oracle = 0.0; // reference it was compared against
  double error = 0.0;  // |value - oracle| in the metric of the check
  double tolerance = 0.0;
  bool pass = false;
  double wall_ms = 0.0;
};

inline ReportRecord make_record(std::string name, std::string inputs, double value, double oracle,
                                double error, double tolerance) {
  ReportRecord r;
  r.name = std::move(name);
  r.inputs = std::move(inputs);
  r.value = value;
  r.oracle = oracle;
  r.error = error;
  r.tolerance = tolerance;
  r.pass = std::isfinite(error) && error <= tolerance;
  return r;
}

inline bool all_pass(const std::vector<ReportRecord>& records) {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

/// Tolerances as pinned by the acceptance criteria; every one of them can be
/// overridden by name on the command line.
inline std::map<std::string, double> default_tolerances() {
  return {
      {"z_identity", 1e-14},
      {"mean_moment_fd", 1e-8},
      {"charts_roundtrip", 1e-8},
      {"charts_teich_roundtrip", 1e-7},
      {"omega_transport", 1e-6},
      {"moment_transport", 1e-6},
      {"lemma1", 1e-5},
      {"lemma1_ratio", 0.5},
      {"saddle_closed", 1e-12},
      {"saddle_green", 1e-10},
      {"bilocal_routes", 1e-8},
      {"mc_sigmas", 3.0},
      {"to_two_point", 1e-6},
      {"oto_decomposition", 1e-9},
      {"oto_case1", 1e-6},
      {"oto_flag", 1e-5},
      {"taylor_c1", 1e-6},
      {"taylor_naive_c2", 1e-8},
      {"taylor_exact_c2", 0.01},
      {"cocycle", 1e-6},
      {"equivariance", 1e-8},
      {"group_law", 1e-9},
      {"rotation_invariance", 1e-9},
      {"gauge_invariance", 1e-12},
      {"mc_rate", 0.2},
      {"hamiltonian_check", 1e-5},
      {"covariance_oracle", 1e-5},
  };
}

inline double tolerance_of(const std::map<std::string, double>& tol, const std::string& name) {
  const auto it = tol.find(name);
  if (it == tol.end()) throw std::invalid_argument("unknown tolerance name: " + name);
  return it->second;
}

}  // namespace darboux
