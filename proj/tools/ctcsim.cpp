// Copyright 2026 The ctcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ctcsim: sweeps and verification suites for the vacuum-extended clock
// circuit.
//
//   ctcsim dctc [--config PATH] [flags]   D-CTC sweep, CSV out
//   ctcsim pctc [--config PATH] [flags]   P-CTC sweep, CSV out
//   ctcsim verify [SUITE] [--tol TOL]     JSON report
//
// Exit status: 0 ok, 1 invalid input, 2 verification failure, 3 forbidden
// initial data on a single-point run.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctcsim/config.hpp"
#include "ctcsim/errors.hpp"
#include "ctcsim/sweep.hpp"
#include "ctcsim/verify.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitForbidden = 3;

struct FlagBinding {
  const char* flag;
  const char* key;
  const char* help;
  std::string value;
};

struct RunArgs {
  std::string config_path;
  std::vector<FlagBinding> flags{
      {"--N", "N", "clock levels (>= 2)", {}},
      {"--omega", "omega", "comma list of vacuum weights", {}},
      {"--sqrt-omega", "sqrt_omega", "comma list of sqrt(omega) values", {}},
      {"--g", "g", "comma list of trapped vacuum weights (dctc)", {}},
      {"--dt-grid", "dt_grid", "START:STOP:POINTS in units of t_perp", {}},
      {"--dt", "dt", "single delay in units of t_perp", {}},
      {"--e1", "e1", "ground-state energy", {}},
      {"--constrained", "constrained", "P,Q constraint scenario", {}},
      {"--observables", "observables", "populations,clock_probs,cv_probs", {}},
      {"--out", "out", "output path, - for stdout", {}},
  };
};

void add_run_options(CLI::App& cmd, RunArgs& args) {
  cmd.add_option("--config", args.config_path, "key=value configuration file");
  for (FlagBinding& f : args.flags) cmd.add_option(f.flag, f.value, f.help);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ctc::ConfigError("--config", "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_sweep_command(const std::string& model, const RunArgs& args) {
  std::vector<ctc::Setting> overrides{{"model", model, "subcommand"}};
  for (const FlagBinding& f : args.flags) {
    if (!f.value.empty()) overrides.push_back({f.key, f.value, f.flag});
  }
  const std::string text = args.config_path.empty() ? "" : read_file(args.config_path);
  const ctc::RunConfig config = ctc::parse_config(text, overrides);
  const ctc::SweepResult result = ctc::run_sweep(config);

  if (config.output_path == "-") {
    ctc::write_csv(std::cout, result);
    std::cout.flush();
  } else {
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw ctc::ConfigError("--out", "cannot write '" + config.output_path + "'");
    ctc::write_csv(out, result);
  }
  if (config.single_point() && result.any_forbidden()) {
    std::cerr << "ctcsim: forbidden initial data at dt = " << config.delays().front() << '\n';
    return kExitForbidden;
  }
  return kExitOk;
}

nlohmann::json to_json(const ctc::VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const ctc::CheckResult& c : report.checks) {
    checks.push_back(
        {{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  return {{"suite", std::string(ctc::to_string(report.suite))},
          {"checks", std::move(checks)},
          {"pass", report.pass()}};
}

int run_verify_command(const std::string& suite_name, double tol) {
  std::vector<ctc::Suite> suites;
  if (suite_name.empty() || suite_name == "all") {
    suites = ctc::all_suites();
  } else if (auto s = ctc::parse_suite(suite_name)) {
    suites.push_back(*s);
  } else {
    throw ctc::ConfigError("SUITE", "unknown suite '" + suite_name + "'");
  }
  nlohmann::json reports = nlohmann::json::array();
  bool pass = true;
  for (ctc::Suite s : suites) {
    const ctc::VerifyReport report = ctc::verify(s, tol > 0.0 ? tol : ctc::default_tolerance(s));
    pass = pass && report.pass();
    reports.push_back(to_json(report));
  }
  const nlohmann::json doc =
      reports.size() == 1 ? reports[0] : nlohmann::json{{"suites", reports}, {"pass", pass}};
  std::cout << doc.dump(2) << '\n';
  return pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-timelike-curve clock circuit simulator"};
  app.require_subcommand(1);

  RunArgs dctc_args;
  RunArgs pctc_args;
  CLI::App* dctc = app.add_subcommand("dctc", "Deutsch fixed-point sweep (CSV)");
  CLI::App* pctc = app.add_subcommand("pctc", "post-selected teleportation sweep (CSV)");
  add_run_options(*dctc, dctc_args);
  add_run_options(*pctc, pctc_args);

  std::string suite;
  double tol = 0.0;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite (JSON)");
  verify->add_option("suite", suite, "unitarity|fixedpoint|oracle|constraints|figures|all");
  verify->add_option("--tol", tol, "pass threshold; suite default when omitted")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (dctc->parsed()) return run_sweep_command("dctc", dctc_args);
    if (pctc->parsed()) return run_sweep_command("pctc", pctc_args);
    return run_verify_command(suite, tol);
  } catch (const ctc::ConfigError& e) {
    std::cerr << "ctcsim: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ctcsim: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "ctcsim: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}
