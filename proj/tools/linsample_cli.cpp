// Copyright 2026 The linsample Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit status: 0 success, 1 usage or runtime error,
// 2 when a report assertion (or a metric validation) fails.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linsample/linsample.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAssertion = 2;

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::vector<std::string> constants;
  bool json = false;
  bool csv = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_out = true) {
  cmd->add_option("--seed", c.seed, "RNG seed");
  if (with_out) cmd->add_option("--out", c.out, "Write the report here instead of stdout");
  cmd->add_option("--constants", c.constants,
                  "Constant overrides, e.g. c_sample=16 or threshold_frac=0.375")
      ->delimiter(',');
  auto* j = cmd->add_flag("--json", c.json, "JSON report (default)");
  auto* k = cmd->add_flag("--csv", c.csv, "CSV flattening of the report");
  j->excludes(k);
}

// Parses name=value overrides into the params object. Returns false on a bad
// entry.
bool apply_constants(const std::vector<std::string>& entries, nlohmann::json& params) {
  for (const auto& entry : entries) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: constant override '" << entry << "' is not name=value\n";
      return false;
    }
    const std::string name = entry.substr(0, eq);
    if (name != "c_sample" && name != "threshold_frac") {
      std::cerr << "error: unknown constant '" << name << "' (c_sample, threshold_frac)\n";
      return false;
    }
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(entry.substr(eq + 1), &used);
      if (used != entry.size() - eq - 1) throw std::invalid_argument(entry);
    } catch (const std::exception&) {
      std::cerr << "error: constant override '" << entry << "' has a bad value\n";
      return false;
    }
    params["constants"][name] = value;
    std::cerr << "warning: " << name << "=" << value
              << " overrides a default constant; the success-probability guarantee no "
                 "longer applies\n";
  }
  return true;
}

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream f(path);
  if (!f || !(f << text)) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kExitUsage;
  }
  return kExitOk;
}

int run(const std::string& command, nlohmann::json params, const Common& c,
        const std::string& report_path) {
  params["seed"] = c.seed;
  if (!apply_constants(c.constants, params)) return kExitUsage;
  char* report = nullptr;
  int passed = 0;
  const std::string text = params.dump();
  const ls_status st = ls_run_experiment(command.c_str(), text.c_str(), c.csv ? 1 : 0, &report,
                                         &passed);
  if (st != LS_OK) {
    std::cerr << "error (" << ls_status_name(st) << "): " << ls_last_error() << "\n";
    return kExitUsage;
  }
  const std::string body(report);
  ls_string_free(report);
  const int rc = emit(body, report_path);
  if (rc != kExitOk) return rc;
  if (!passed) {
    std::cerr << command << ": one or more assertions failed\n";
    return kExitAssertion;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear sampling of lambda-metric graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ls_version()));

  // sample
  Common sample_c;
  std::string sample_instance;
  std::optional<double> sample_beta;
  std::optional<double> sample_alpha;
  double sample_gamma = 2.0;
  std::string sample_report;
  auto* sample = app.add_subcommand("sample", "Build H^beta (or H^alpha) and write it as CSV");
  sample->add_option("--instance", sample_instance, "Instance spec")->required();
  auto* beta_opt = sample->add_option("--beta", sample_beta, "Target total sampled weight");
  auto* alpha_opt = sample->add_option("--alpha", sample_alpha, "Scale factor alpha");
  beta_opt->excludes(alpha_opt);
  sample->add_option("--gamma", sample_gamma, "Slack of the beta sandwich");
  sample->add_option("--report", sample_report, "Write the report here instead of stdout");
  add_common(sample, sample_c);

  // solve
  Common solve_c;
  std::string solve_instance;
  std::string solve_problem = "avg";
  double solve_eps = 0.1;
  double solve_gamma = 2.0;
  std::size_t solve_trials = 1;
  std::size_t solve_restarts = 8;
  std::optional<double> solve_beta;
  auto* solve = app.add_subcommand("solve", "Sparsify, solve on H and re-evaluate on G");
  solve->add_option("--instance", solve_instance, "Instance spec")->required();
  solve->add_option("--problem", solve_problem, "avg, densest, maxcut or hypermatching:<k>");
  solve->add_option("--epsilon", solve_eps, "Accuracy epsilon in (0, 1]");
  solve->add_option("--gamma", solve_gamma, "Slack of the beta sandwich");
  solve->add_option("--trials", solve_trials, "Number of seeded trials");
  solve->add_option("--beta", solve_beta, "Override the tabulated beta");
  solve->add_option("--restarts", solve_restarts, "Max-cut local search restarts");
  add_common(solve, solve_c);

  // bench-queries
  Common bench_c;
  std::string bench_family = "euclidean";
  std::vector<std::size_t> bench_sizes = {512, 1024, 2048};
  std::string bench_rule = "nlogn";
  std::size_t bench_seeds = 5;
  auto* bench = app.add_subcommand("bench-queries", "Query counts across instance sizes");
  bench->add_option("--family", bench_family, "euclidean, line, star, g1 or g2");
  bench->add_option("--sizes", bench_sizes, "Instance sizes")->delimiter(',');
  bench->add_option("--beta-rule", bench_rule, "nlogn, n or const:<beta>");
  bench->add_option("--seeds", bench_seeds, "Seeds per size")->check(CLI::PositiveNumber);
  add_common(bench, bench_c);

  // appendix-demo
  Common app_c;
  std::size_t app_n = 100;
  double app_p = 0.05;
  double app_eps = 0.1;
  std::size_t app_trials = 100;
  auto* appendix = app.add_subcommand("appendix-demo", "Uniform vs linear sampling on a star");
  appendix->add_option("--n", app_n, "Vertex count");
  appendix->add_option("--p", app_p, "Uniform sampling probability");
  appendix->add_option("--epsilon", app_eps, "Accuracy epsilon for the linear path");
  appendix->add_option("--trials", app_trials, "Number of seeded trials");
  add_common(appendix, app_c);

  // hardness-demo
  Common hard_c;
  std::size_t hard_n = 10000;
  double hard_delta = 0.1;
  double hard_eps = 0.1;
  std::size_t hard_trials = 1000;
  auto* hardness = app.add_subcommand("hardness-demo", "Distinguishing game on G1 vs G2");
  hardness->add_option("--n", hard_n, "Vertex count");
  hardness->add_option("--delta", hard_delta, "Budget fraction; budget = floor(delta n) - 1");
  hardness->add_option("--epsilon", hard_eps, "Accuracy epsilon of the estimator");
  hardness->add_option("--trials", hard_trials, "Number of seeded trials");
  add_common(hardness, hard_c);

  // validate
  std::string val_instance;
  std::size_t val_cap = 500;
  auto* validate = app.add_subcommand("validate", "Exhaustive lambda-triangle check");
  validate->add_option("--instance", val_instance, "Instance spec")->required();
  validate->add_option("--cap", val_cap, "Largest n to check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*sample) {
    if (!sample_beta && !sample_alpha) {
      std::cerr << "error: sample needs --beta or --alpha\n";
      return kExitUsage;
    }
    nlohmann::json p{{"instance", sample_instance}, {"gamma", sample_gamma}};
    if (sample_beta) p["beta"] = *sample_beta;
    if (sample_alpha) p["alpha"] = *sample_alpha;
    if (!sample_c.out.empty()) p["out"] = sample_c.out;
    return run("sample", p, sample_c, sample_report);
  }
  if (*solve) {
    nlohmann::json p{{"instance", solve_instance}, {"problem", solve_problem},
                     {"epsilon", solve_eps},       {"gamma", solve_gamma},
                     {"trials", solve_trials},     {"restarts", solve_restarts}};
    if (solve_beta) p["beta"] = *solve_beta;
    return run("solve", p, solve_c, solve_c.out);
  }
  if (*bench) {
    nlohmann::json p{{"family", bench_family},
                     {"sizes", bench_sizes},
                     {"beta_rule", bench_rule},
                     {"seeds", bench_seeds}};
    return run("bench-queries", p, bench_c, bench_c.out);
  }
  if (*appendix) {
    nlohmann::json p{{"n", app_n}, {"p", app_p}, {"epsilon", app_eps}, {"trials", app_trials}};
    return run("appendix-demo", p, app_c, app_c.out);
  }
  if (*hardness) {
    nlohmann::json p{
        {"n", hard_n}, {"delta", hard_delta}, {"epsilon", hard_eps}, {"trials", hard_trials}};
    return run("hardness-demo", p, hard_c, hard_c.out);
  }
  if (*validate) {
    ls_instance* inst = nullptr;
    ls_status st = ls_instance_from_spec(val_instance.c_str(), &inst);
    if (st != LS_OK) {
      std::cerr << "error (" << ls_status_name(st) << "): " << ls_last_error() << "\n";
      return kExitUsage;
    }
    int ok = 0;
    uint32_t triple[3] = {0, 0, 0};
    st = ls_instance_validate(inst, val_cap, &ok, triple);
    const double lambda = ls_instance_lambda(inst);
    ls_instance_free(inst);
    if (st != LS_OK) {
      std::cerr << "error (" << ls_status_name(st) << "): " << ls_last_error() << "\n";
      return kExitUsage;
    }
    nlohmann::json r{{"instance", val_instance}, {"lambda", lambda}, {"ok", ok == 1}};
    if (!ok) r["violating_triple"] = {triple[0], triple[1], triple[2]};
    std::cout << r.dump(2) << "\n";
    return ok ? kExitOk : kExitAssertion;
  }
  return kExitUsage;
}
