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

#include <string_view>

#include <Eigen/Core>

#include "coflow/lp_problem.hpp"

namespace coflow {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view to_string(SolveStatus status);

struct SolveOptions {
  double tolerance = 1e-9;  // optimality and primal feasibility
  long iteration_limit = 2'000'000;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degeneracy_patience = 60;
  int refactor_period = 80;
};

struct LPSolution {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = 0.0;
  Eigen::VectorXd primal;  // one value per column
  long iterations = 0;
};

/// Bounded two-phase revised simplex. Phase one drives artificial variables
/// out of an all-slack starting basis; phase two prices with Dantzig's rule
/// and falls back to Bland's rule while pivots stay degenerate. The basis is
/// held as a sparse LU factorization plus product-form eta updates.
///
/// Deterministic for identical inputs and options.
LPSolution solve(const LPProblem& problem, const SolveOptions& options = {});

struct SolutionCheck {
  double max_violation = 0.0;
  double objective_error = 0.0;  // |reported - c.x| / max(1, |c.x|)
  bool ok(double feasibility = 1e-7, double objective = 1e-7) const {
    return max_violation <= feasibility && objective_error <= objective;
  }
};

/// Residual re-verification of a reported solution, independent of how it
/// was produced.
SolutionCheck check_solution(const LPProblem& problem, const LPSolution& solution);

}  // namespace coflow
