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

#include "coflow/pipeline.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coflow/mps.hpp"

namespace coflow {

namespace fs = std::filesystem;

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kStretch: return "stretch";
    case Strategy::kHeuristic: return "heuristic";
    case Strategy::kIntervalStretch: return "interval-stretch";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  if (text == "stretch") return Strategy::kStretch;
  if (text == "heuristic") return Strategy::kHeuristic;
  if (text == "interval-stretch") return Strategy::kIntervalStretch;
  return std::nullopt;
}

std::optional<SolverChoice> parse_solver(std::string_view text) {
  if (text == "builtin") return SolverChoice{};
  constexpr std::string_view prefix = "mps:";
  if (text.starts_with(prefix) && text.size() > prefix.size()) {
    return SolverChoice{std::string(text.substr(prefix.size()))};
  }
  return std::nullopt;
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

LPSolution solve_external(const LPProblem& problem, const std::string& command) {
  static std::atomic<int> counter{0};
  const fs::path dir = fs::temp_directory_path() /
                       ("coflow-lp-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter.fetch_add(1)));
  fs::create_directories(dir);
  const fs::path model = dir / "model.mps";
  const fs::path answer = dir / "solution.txt";
  {
    std::ofstream out(model);
    write_mps(out, problem);
  }
  const std::string cmd = shell_quote(command) + " " + shell_quote(model.string()) + " " +
                          shell_quote(answer.string());
  const int rc = std::system(cmd.c_str());
  LPSolution sol;
  sol.primal = Eigen::VectorXd::Zero(problem.column_count());
  sol.status = SolveStatus::kOptimal;
  std::ifstream in(answer);
  if (rc != 0 || !in) {
    fs::remove_all(dir);
    throw SolverFailure(SolveStatus::kIterationLimit,
                        "external solver failed (exit " + std::to_string(rc) + ")");
  }
  std::string name;
  std::string value;
  while (in >> name >> value) {
    if (name == "status") {
      if (value == "infeasible") sol.status = SolveStatus::kInfeasible;
      else if (value == "unbounded") sol.status = SolveStatus::kUnbounded;
      else if (value != "optimal") sol.status = SolveStatus::kIterationLimit;
      continue;
    }
    const auto col = problem.column(name);
    if (!col) {
      fs::remove_all(dir);
      throw SolverFailure(SolveStatus::kIterationLimit,
                          "external solver reported unknown column " + name);
    }
    sol.primal[*col] = std::stod(value);
  }
  fs::remove_all(dir);
  sol.objective = problem.objective.dot(sol.primal);
  return sol;
}

}  // namespace

LPSolution solve_lp(const LPProblem& problem, const SolverChoice& solver,
                    const SolveOptions& options) {
  LPSolution sol = solver.builtin() ? solve(problem, options)
                                    : solve_external(problem, solver.external);
  if (sol.status != SolveStatus::kOptimal) {
    throw SolverFailure(sol.status, "LP solve ended with status " +
                                        std::string(to_string(sol.status)));
  }
  if (!solver.builtin()) {
    const SolutionCheck check = check_solution(problem, sol);
    if (!check.ok(1e-6, 1e-6)) {
      std::ostringstream os;
      os << "external solution violates the LP by " << check.max_violation;
      throw SolverFailure(SolveStatus::kIterationLimit, os.str());
    }
  }
  return sol;
}

PipelineResult run_pipeline(const Instance& instance, const PipelineOptions& options) {
  if (const auto errors = validate_instance(instance); !errors.empty()) {
    throw FormulationError("invalid instance: " + errors.front());
  }
  PipelineResult r;
  r.horizon = options.horizon.value_or(horizon_upper_bound(instance));
  if (options.strategy == Strategy::kIntervalStretch) {
    const IntervalGrid grid =
        geometric_intervals(interval_horizon(instance, r.horizon, options.epsilon),
                            options.epsilon);
    r.lp = build_interval_lp(instance, grid);
    r.solution = solve_lp(r.lp, options.solver, options.simplex);
    const FractionalSchedule by_interval =
        extract_fractional(r.lp, r.solution, instance, grid.interval_count());
    r.fractional = expand_interval_fractional(by_interval, grid, instance);
    r.grid = grid;
  } else {
    r.lp = build_time_indexed_lp(instance, r.horizon);
    r.solution = solve_lp(r.lp, options.solver, options.simplex);
    r.fractional = extract_fractional(r.lp, r.solution, instance, r.horizon);
  }
  r.lp_objective = r.solution.objective;

  if (options.strategy == Strategy::kHeuristic) {
    StretchTrial trial = lp_heuristic(instance, r.fractional);
    r.run.average_objective = trial.report.objective;
    r.run.trials.push_back(trial);
    r.run.best = std::move(trial);
  } else {
    r.run = run_stretch(instance, r.fractional, options.trials, options.seed);
  }
  r.schedule = r.run.best.schedule;
  r.report = r.run.best.report;
  r.violations = verify_schedule(r.schedule, instance);
  return r;
}

}  // namespace coflow
