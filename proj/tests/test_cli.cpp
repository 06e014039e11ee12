// Contract tests of the command-line tool: exit codes, output determinism,
// and the CSV/JSON formats. Invoked with the binary path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  } else {
    std::cout << "ok: " << what << "\n";
  }
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <orbit-bosonizer path>\n";
    return 2;
  }
  const std::string bin = argv[1];

  // z: closed form value and exit code
  {
    const auto r = run(bin + " z --c 24 --alpha 1 --t 1");
    check(r.exit_code == 0, "z exits 0");
    const auto j = nlohmann::json::parse(r.out, nullptr, false);
    check(!j.is_discarded(), "z output is valid JSON");
    const double expect = std::sqrt(1.0 / (2.0 * M_PI)) * std::exp(-2.0 * M_PI);
    check(std::abs(j["z_closed"].get<double>() - expect) < 1e-18, "z value matches closed form");
    check(r.out.find("schema_version") != std::string::npos, "z carries schema_version");
  }

  // determinism: identical seed and config give identical bytes
  {
    const std::string cmd = bin +
        " correlate --points 0.5,1.5 --method monte-carlo --mc-samples 2000 --modes-n 16"
        " --c 24 --alpha 1 --t 1 --seed 7";
    const auto a = run(cmd);
    const auto b = run(cmd);
    check(a.exit_code == 0, "monte-carlo correlate exits 0");
    check(a.out == b.out, "identical seed+config produce byte-identical output");
    // the env var is the fallback seed
    const auto c = run("ORBIT_BOSONIZER_SEED=7 " + bin +
                       " correlate --points 0.5,1.5 --method monte-carlo --mc-samples 2000"
                       " --modes-n 16 --c 24 --alpha 1 --t 1");
    check(c.out == a.out, "ORBIT_BOSONIZER_SEED is used when --seed is absent");
  }

  // correlate: closed value agrees between json runs, ordering is validated
  {
    const auto r = run(bin + " correlate --points 0.5,2.5,1.5,4.0 --ordering oto --method both"
                             " --c 14 --alpha 0.8 --t 0.9");
    check(r.exit_code == 0, "oto correlate exits 0");
    const auto j = nlohmann::json::parse(r.out, nullptr, false);
    check(!j.is_discarded() && j["per_case"].size() == 5, "oto correlate reports five cases");
    bool any_flagged = false;
    for (const auto& cs : j["per_case"]) any_flagged = any_flagged || cs["flagged"].get<bool>();
    check(any_flagged, "oto report carries discrepancy flags");

    const auto bad = run(bin + " correlate --points 0.5,1.0,2.0,4.0 --ordering oto");
    check(bad.exit_code == 2, "wrong oto ordering is a usage error (exit 2)");
  }

  // sweep: CSV with header, LF endings, matching the closed form
  {
    const auto r = run(bin + " sweep --param t --min 0.5 --max 5 --steps 4 --c 12 --b0 0");
    check(r.exit_code == 0, "sweep exits 0");
    check(r.out.find('\r') == std::string::npos, "sweep output uses LF line endings");
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    check(line.rfind("# schema_version=", 0) == 0, "sweep carries a schema_version comment");
    std::getline(is, line);
    check(line == "t,z,log_z,mean_moment", "sweep header row");
    bool rows_ok = true;
    while (std::getline(is, line)) {
      std::istringstream row(line);
      std::string cell;
      std::getline(row, cell, ',');
      const double t = std::stod(cell);
      std::getline(row, cell, ',');
      const double z = std::stod(cell);
      rows_ok = rows_ok && std::abs(z - std::sqrt(t / (2.0 * M_PI))) <= 1e-14 * z;
    }
    check(rows_ok, "sweep z column matches (t/2pi)^{1/2} rowwise");
  }

  // expand: fitted coefficients near their targets
  {
    const auto r = run(bin + " expand --c 12 --alpha 1 --t 1");
    check(r.exit_code == 0, "expand exits 0");
    const auto j = nlohmann::json::parse(r.out, nullptr, false);
    check(std::abs(j["fits"]["naive_c2"].get<double>()) < 1e-8, "expand naive c2 is zero");
    check(std::abs(j["fits"]["exact_c2"].get<double>() - j["targets"]["exact_c2"].get<double>()) <
              0.01 * j["targets"]["exact_c2"].get<double>(),
          "expand exact c2 hits 3pi/(ct)");
  }

  // verify: suite selection, pass and deliberate-fail exit codes
  {
    const auto ok = run(bin + " verify lemma1 --fast --c 12 --alpha 1 --grid-n 1024");
    check(ok.exit_code == 0, "verify lemma1 passes (exit 0)");
    check(ok.out.find("lemma1/residual") != std::string::npos, "verify streams report records");

    const auto fail = run(bin + " verify lemma1 --fast --tol lemma1=1e-12");
    check(fail.exit_code == 1, "unachievable tolerance fails (exit 1)");

    const auto usage = run(bin + " verify nonsense");
    check(usage.exit_code == 2, "unknown suite is a usage error (exit 2)");

    const auto badtol = run(bin + " verify lemma1 --fast --tol nosuch=1");
    check(badtol.exit_code == 2, "unknown tolerance name is a usage error (exit 2)");

    const auto csv = run(bin + " verify lemma1 --fast --format csv");
    check(csv.exit_code == 0 && csv.out.find("name,inputs,value") != std::string::npos,
          "verify csv format has a header row");

    const auto charts = run(bin + " verify charts --fast");
    check(charts.exit_code == 0, "verify charts passes (exit 0)");
  }

  // eps sweep emits the exact and naive columns
  {
    const auto r = run(bin + " sweep --param eps --min 0.005 --max 0.05 --steps 3 --c 12 --alpha 1");
    check(r.exit_code == 0, "eps sweep exits 0");
    check(r.out.find("eps,exact,naive") != std::string::npos, "eps sweep header row");
  }

  // conflicting orbit flags
  {
    const auto r = run(bin + " z --b0 -1 --alpha 1");
    check(r.exit_code == 2, "--b0 with --alpha is a usage error");
  }

  if (failures == 0) {
    std::cout << "all cli contract checks passed\n";
    return 0;
  }
  std::cerr << failures << " cli contract checks failed\n";
  return 1;
}
