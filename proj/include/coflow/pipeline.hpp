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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coflow/formulation.hpp"
#include "coflow/lp_problem.hpp"
#include "coflow/model.hpp"
#include "coflow/oracle.hpp"
#include "coflow/rounding.hpp"
#include "coflow/simplex.hpp"

namespace coflow {

enum class Strategy { kStretch, kHeuristic, kIntervalStretch };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view text);

/// "builtin" or "mps:<path>". An external solver is an executable invoked as
/// `<path> <model.mps> <solution.txt>` that writes one `column value` pair
/// per line, optionally preceded by `status <optimal|infeasible|unbounded>`.
struct SolverChoice {
  std::string external;  // empty for the builtin simplex

  bool builtin() const { return external.empty(); }
};

std::optional<SolverChoice> parse_solver(std::string_view text);

/// The LP could not be solved to optimality, or an external answer failed
/// residual checks.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(SolveStatus status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  SolveStatus status() const { return status_; }

 private:
  SolveStatus status_;
};

/// Solves with the chosen backend. External answers are re-checked against
/// the problem's rows and bounds (1e-6) before being returned. Throws
/// SolverFailure unless the result is optimal.
LPSolution solve_lp(const LPProblem& problem, const SolverChoice& solver,
                    const SolveOptions& options = {});

struct PipelineOptions {
  Strategy strategy = Strategy::kStretch;
  int trials = 20;
  std::uint64_t seed = 1;
  double epsilon = 0.5436;
  std::optional<int> horizon;  // defaults to horizon_upper_bound
  SolverChoice solver;
  SolveOptions simplex;
};

struct PipelineResult {
  int horizon = 0;
  std::optional<IntervalGrid> grid;  // interval strategy only
  LPProblem lp;
  LPSolution solution;
  double lp_objective = 0.0;
  FractionalSchedule fractional;  // slot-indexed; expanded for the interval LP
  StretchRun run;                 // one trial for the heuristic
  RateSchedule schedule;          // best trial, compacted
  CompletionReport report;
  std::vector<ScheduleViolation> violations;

  bool verified() const { return violations.empty(); }
};

/// build -> solve -> round -> compact -> verify. Throws FormulationError for
/// instances that cannot be relaxed and SolverFailure for solver trouble.
PipelineResult run_pipeline(const Instance& instance, const PipelineOptions& options);

}  // namespace coflow
