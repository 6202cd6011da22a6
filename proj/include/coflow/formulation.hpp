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

#include <stdexcept>
#include <string>
#include <vector>

#include "coflow/lp_problem.hpp"
#include "coflow/model.hpp"
#include "coflow/simplex.hpp"

namespace coflow {

/// Thrown when an instance cannot yield a feasible LP (unroutable flow,
/// horizon not past the last release, grid too short).
class FormulationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Latest release plus, per flow, the number of slots needed to push its
/// demand through its bottleneck alone: the path's minimum capacity in the
/// single-path model, the source-sink max-flow value in the free-path model.
int horizon_upper_bound(const Instance& instance);

/// Geometric partition of time: boundaries 0, 1, (1+eps), (1+eps)^2, ...
/// Interval k (1-based) is (boundaries[k-1], boundaries[k]].
struct IntervalGrid {
  double epsilon = 0.0;
  std::vector<double> boundaries;

  int interval_count() const { return static_cast<int>(boundaries.size()) - 1; }
  double length(int k) const { return boundaries[k] - boundaries[k - 1]; }
  double end() const { return boundaries.back(); }
};

/// Smallest geometric grid whose last boundary reaches `horizon`: the
/// interval count is 1 + ceil(log_{1+eps} horizon).
IntervalGrid geometric_intervals(int horizon, double epsilon);

/// Horizon the interval LP needs so that every flow still fits after the
/// first grid boundary at or past the latest release.
int interval_horizon(const Instance& instance, int horizon, double epsilon);

// Column names: x_j_i_t, xe_j_i_t_e (e is the edge id), X_j_t, C_j with
// coflow j and flow i counted from 0 and the slot or interval t from 1.
std::string flow_column(int j, int i, int t);
std::string edge_column(int j, int i, int t, const std::string& edge_id);
std::string cumulative_column(int j, int t);
std::string completion_column(int j);

/// Time-indexed relaxation over slots 1..horizon for the instance's routing
/// model. Throws FormulationError when horizon <= max release.
LPProblem build_time_indexed_lp(const Instance& instance, int horizon);

/// The same relaxation over a geometric grid. Capacities scale with interval
/// length, the completion row weights each interval by its length, and a
/// flow may only use intervals that start at or after its release.
LPProblem build_interval_lp(const Instance& instance, const IntervalGrid& grid);

/// Reads the per-period flow (and edge) fractions out of an LP solution.
/// Solver noise below 1e-10 is dropped, each flow is renormalized to sum to
/// one, X_j is recomputed as the minimum cumulative fraction over the
/// coflow's flows, and C_j is copied from the solution.
FractionalSchedule extract_fractional(const LPProblem& problem,
                                      const LPSolution& solution,
                                      const Instance& instance, int periods);

}  // namespace coflow
