// Copyright 2026 The Coflow Authors
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

// Command-line front end: gen, solve, validate, bench, reduce, check.
// Exit codes: 0 ok, 1 verification failure, 2 usage or I/O error,
// 3 solver failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "coflow/bench.hpp"
#include "coflow/formulation.hpp"
#include "coflow/io.hpp"
#include "coflow/open_shop.hpp"
#include "coflow/oracle.hpp"
#include "coflow/pipeline.hpp"

namespace {

using namespace coflow;

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;
constexpr int kSolverFailure = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Instance read_instance(const std::string& path) {
  if (!std::filesystem::exists(path)) throw UsageError("instance not found: " + path);
  Instance instance = load_instance(path);
  if (const auto errors = validate_instance(instance); !errors.empty()) {
    std::string text = "invalid instance " + path + ":";
    for (const auto& e : errors) text += "\n  " + e;
    throw UsageError(text);
  }
  return instance;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  if (!file) throw UsageError("cannot write " + out);
  file << text;
}

SolverChoice solver_from_flag(const std::string& text) {
  const auto s = parse_solver(text);
  if (!s) throw UsageError("--solver must be builtin or mps:<path>");
  return *s;
}

struct Flags {
  std::string config;
  std::string model;
  std::string topology;
  int jobs = 0;
  std::string strategy = "stretch";
  std::vector<std::string> strategies;
  std::vector<double> epsilons;
  int trials = 20;
  std::uint64_t seed = 1;
  double slot_length = 0.0;
  int horizon = 0;
  std::string solver = "builtin";
  std::string out;
  std::string schedule_out;
  bool exact = false;
  std::string instance;
  std::string schedule;
  std::vector<std::string> instances;
};

BenchConfig config_from_flags(const Flags& f) {
  BenchConfig c;
  if (!f.config.empty()) c = bench_config_from_json(read_json_file(f.config));
  if (!f.topology.empty()) c.topology = f.topology;
  if (!f.model.empty()) {
    const auto m = parse_routing_model(f.model);
    if (!m) throw UsageError("--model must be single-path or free-path");
    c.model = *m;
  }
  if (f.jobs > 0) c.jobs = f.jobs;
  if (f.slot_length > 0.0) c.slot_length = f.slot_length;
  if (!f.strategies.empty()) {
    c.strategies.clear();
    for (const auto& s : f.strategies) {
      const auto parsed = parse_strategy(s);
      if (!parsed) throw UsageError("unknown strategy " + s);
      c.strategies.push_back(*parsed);
    }
  }
  if (!f.epsilons.empty()) c.epsilons = f.epsilons;
  if (const auto errors = validate_bench_config(c); !errors.empty()) {
    throw UsageError("invalid configuration: " + errors.front());
  }
  return c;
}

int run_gen(const Flags& f, const CLI::App& app) {
  BenchConfig c = config_from_flags(f);
  const std::uint64_t seed = app.count("--seed") || f.config.empty() ? f.seed : c.seed;
  emit(f.out, instance_to_json(generate_instance(c, seed)).dump(1) + "\n");
  return kOk;
}

int run_solve(const Flags& f, const CLI::App& app) {
  const Instance instance = read_instance(f.instance);
  PipelineOptions options;
  const auto strategy = parse_strategy(f.strategy);
  if (!strategy) throw UsageError("--strategy must be stretch, heuristic or interval-stretch");
  options.strategy = *strategy;
  options.trials = f.trials;
  options.seed = f.seed;
  if (!f.epsilons.empty()) options.epsilon = f.epsilons.front();
  if (app.count("--horizon")) options.horizon = f.horizon;
  options.solver = solver_from_flag(f.solver);
  const PipelineResult r = run_pipeline(instance, options);

  std::ostringstream report;
  report.precision(12);
  report << "model " << to_string(instance.model()) << "\n"
         << "strategy " << to_string(options.strategy) << "\n"
         << "horizon " << r.horizon << "\n";
  if (r.grid) report << "intervals " << r.grid->interval_count() << "\n";
  report << "lp_objective " << r.lp_objective << "\n"
         << "schedule_objective " << r.report.objective << "\n"
         << "best_lambda " << r.run.best.lambda.value() << "\n"
         << "mean_objective " << r.run.average_objective << "\n"
         << "slots " << r.schedule.slot_count << "\n";
  if (!r.verified()) {
    report << "verification failed\n";
    for (const auto& v : r.violations) report << "  " << v.describe(instance) << "\n";
    std::cerr << report.str();
    return kVerificationFailure;
  }
  report << "verification ok\n";
  std::cout << report.str();
  if (!f.out.empty()) write_json_file(f.out, schedule_to_json(r.schedule, instance));
  return kOk;
}

int run_validate(const Flags& f) {
  const Instance instance = read_instance(f.instance);
  if (!std::filesystem::exists(f.schedule)) throw UsageError("schedule not found: " + f.schedule);
  const RateSchedule schedule = schedule_from_json(read_json_file(f.schedule), instance);
  const auto violations = verify_schedule(schedule, instance);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << v.describe(instance) << "\n";
    return kVerificationFailure;
  }
  const CompletionReport report = completion_times(schedule, instance);
  std::cout << "verification ok\nobjective " << report.objective << "\n";
  return kOk;
}

int run_bench_cmd(const Flags& f, const CLI::App& app) {
  BenchConfig c = config_from_flags(f);
  if (app.count("--trials")) c.trials = f.trials;
  if (app.count("--seed")) c.seed = f.seed;
  std::vector<BenchCase> cases;
  if (!f.instances.empty()) {
    for (const auto& path : f.instances) cases.push_back({read_instance(path), c.seed});
  } else if (!f.config.empty() || app.count("--topology")) {
    cases = generate_cases(c);
  }
  const auto rows = run_bench(cases, c, solver_from_flag(f.solver));
  std::ostringstream csv;
  write_bench_csv(csv, rows);
  emit(f.out, csv.str());
  for (const auto& row : rows) {
    if (!row.error.empty()) std::cerr << "row seed " << row.seed << " " << to_string(row.strategy)
                                      << " failed: " << row.error << "\n";
  }
  return kOk;
}

int run_reduce(const Flags& f) {
  if (!std::filesystem::exists(f.instance)) throw UsageError("instance not found: " + f.instance);
  const OpenShopInstance shop = open_shop_from_json(read_json_file(f.instance));
  if (const auto errors = validate_open_shop(shop); !errors.empty()) {
    throw UsageError("invalid open shop: " + errors.front());
  }
  RoutingModel model = RoutingModel::kSinglePath;
  if (!f.model.empty()) {
    const auto m = parse_routing_model(f.model);
    if (!m) throw UsageError("--model must be single-path or free-path");
    model = *m;
  }
  emit(f.out, instance_to_json(reduce_open_shop(shop, model)).dump(1) + "\n");
  if (f.exact) {
    const OpenShopOptimum best = open_shop_optimal(shop);
    std::cerr << "exact_objective " << best.objective << "\norder";
    for (int j : best.order) std::cerr << " " << j;
    std::cerr << "\n";
  }
  return kOk;
}

int run_check(const Flags& f) {
  const Instance instance = read_instance(f.instance);
  const int horizon = horizon_upper_bound(instance);
  const LPProblem lp = build_time_indexed_lp(instance, horizon);
  const LPSolution sol = solve_lp(lp, solver_from_flag(f.solver));
  const FractionalSchedule frac = extract_fractional(lp, sol, instance, horizon);
  const auto checks = continuous_interpolation_checks(frac);
  bool ok = true;
  std::printf("coflow,integral,identity_residual,lemma_slack,lambda_integral,counting_residual\n");
  for (size_t j = 0; j < checks.size(); ++j) {
    const auto& c = checks[j];
    std::printf("%zu,%.12g,%.3g,%.12g,%.12g,%.3g\n", j, c.integral, c.identity_residual,
                c.lemma_slack, c.lambda_integral, c.counting_residual);
    ok = ok && c.identity_residual <= 1e-9 && c.lemma_slack >= -1e-9 &&
         c.counting_residual <= 1e-4;
  }
  return ok ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coflow scheduling: LP relaxation, randomized stretching, verification"};
  app.require_subcommand(1);
  Flags f;

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--config", f.config, "JSON bench configuration");
  gen->add_option("--topology", f.topology, "swan-like, gscale-like, ring, random, open-shop");
  gen->add_option("--model", f.model, "single-path or free-path");
  gen->add_option("--jobs", f.jobs, "Number of coflows");
  gen->add_option("--seed", f.seed, "Random seed");
  gen->add_option("--slot-length", f.slot_length, "Slot length; scales link capacity per slot");
  gen->add_option("--out", f.out, "Output file (stdout by default)");

  auto* solve = app.add_subcommand("solve", "Solve an instance and emit a verified schedule");
  solve->add_option("instance", f.instance, "Instance JSON")->required();
  solve->add_option("--strategy", f.strategy, "stretch, heuristic or interval-stretch");
  solve->add_option("--trials", f.trials, "Stretch trials")->check(CLI::PositiveNumber);
  solve->add_option("--seed", f.seed, "Seed for the stretch draws");
  solve->add_option("--epsilon", f.epsilons, "Interval growth rate")->expected(1);
  solve->add_option("--horizon", f.horizon, "Override the slot horizon")->check(CLI::PositiveNumber);
  solve->add_option("--solver", f.solver, "builtin or mps:<path>");
  solve->add_option("--out", f.out, "Schedule JSON output");

  auto* validate = app.add_subcommand("validate", "Verify a schedule file against an instance");
  validate->add_option("instance", f.instance, "Instance JSON")->required();
  validate->add_option("schedule", f.schedule, "Schedule JSON")->required();

  auto* bench = app.add_subcommand("bench", "Run a benchmark sweep and write CSV");
  bench->add_option("instances", f.instances, "Instance files (generated from the config if none)");
  bench->add_option("--config", f.config, "JSON bench configuration");
  bench->add_option("--topology", f.topology, "Topology preset for generated instances");
  bench->add_option("--model", f.model, "single-path or free-path");
  bench->add_option("--jobs", f.jobs, "Coflows per generated instance");
  bench->add_option("--strategy", f.strategies, "Strategies to run (repeatable)");
  bench->add_option("--epsilon", f.epsilons, "Interval growth rates (repeatable)");
  bench->add_option("--trials", f.trials, "Stretch trials")->check(CLI::PositiveNumber);
  bench->add_option("--seed", f.seed, "Base seed");
  bench->add_option("--slot-length", f.slot_length, "Slot length");
  bench->add_option("--solver", f.solver, "builtin or mps:<path>");
  bench->add_option("--out", f.out, "CSV output (stdout by default)");

  auto* reduce = app.add_subcommand("reduce", "Turn an open-shop instance into a coflow instance");
  reduce->add_option("instance", f.instance, "Open-shop JSON")->required();
  reduce->add_option("--model", f.model, "single-path or free-path");
  reduce->add_option("--out", f.out, "Output file (stdout by default)");
  reduce->add_flag("--exact", f.exact, "Also print the exact optimum to stderr");

  auto* check = app.add_subcommand("check", "Report the interpolation identities of the LP");
  check->add_option("instance", f.instance, "Instance JSON")->required();
  check->add_option("--solver", f.solver, "builtin or mps:<path>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsageError;
  }

  try {
    if (gen->parsed()) return run_gen(f, *gen);
    if (solve->parsed()) return run_solve(f, *solve);
    if (validate->parsed()) return run_validate(f);
    if (bench->parsed()) return run_bench_cmd(f, *bench);
    if (reduce->parsed()) return run_reduce(f);
    if (check->parsed()) return run_check(f);
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
