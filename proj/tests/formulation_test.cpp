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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "coflow/bench.hpp"
#include "coflow/formulation.hpp"
#include "coflow/oracle.hpp"
#include "coflow/relay_example.hpp"
#include "coflow/simplex.hpp"
#include "test_support.hpp"

namespace coflow {
namespace {

// Interval count by repeated multiplication in extended precision: the
// smallest k with (1+eps)^k >= T, plus one for the leading unit interval.
int interval_count_by_multiplication(int horizon, double epsilon) {
  long double value = 1.0L;
  int k = 0;
  const long double ratio = 1.0L + static_cast<long double>(epsilon);
  while (value < horizon * (1.0L - 1e-15L)) {
    value *= ratio;
    ++k;
  }
  return 1 + k;
}

double solve_objective(const LPProblem& lp) {
  const LPSolution sol = solve(lp);
  EXPECT_EQ(sol.status, SolveStatus::kOptimal);
  EXPECT_TRUE(check_solution(lp, sol).ok());
  return sol.objective;
}

TEST(HorizonUpperBound, RelayExample) {
  EXPECT_EQ(horizon_upper_bound(relay_example(RoutingModel::kSinglePath)), 6);
  EXPECT_EQ(horizon_upper_bound(relay_example(RoutingModel::kFreePath)), 4);
}

TEST(HorizonUpperBound, ReleasePlusSerialTime) {
  EXPECT_EQ(horizon_upper_bound(testing::single_edge_instance(5.0, 1.0, 3)), 8);
}

TEST(HorizonUpperBound, UnroutableFlowThrows) {
  Network net({"a", "b"}, {{"ba", 1, 0, 1.0}});
  Instance inst(net, {{{Flow{0, 1, 1.0, 0, {}}}, 1.0}}, RoutingModel::kFreePath);
  try {
    horizon_upper_bound(inst);
    FAIL() << "expected FormulationError";
  } catch (const FormulationError& e) {
    EXPECT_NE(std::string(e.what()).find("unroutable flow"), std::string::npos);
  }
}

TEST(GeometricIntervals, UnitHorizon) {
  EXPECT_EQ(geometric_intervals(1, 0.7).boundaries, (std::vector<double>{0.0, 1.0}));
}

TEST(GeometricIntervals, DoublingGrid) {
  EXPECT_EQ(geometric_intervals(4, 1.0).boundaries, (std::vector<double>{0.0, 1.0, 2.0, 4.0}));
}

TEST(GeometricIntervals, CountsMatchRepeatedMultiplication) {
  EXPECT_EQ(geometric_intervals(10, 0.2).interval_count(), 14);
  EXPECT_EQ(geometric_intervals(100, 0.5436).interval_count(), 12);
  for (double eps : {0.05, 0.2, 0.5, 0.5436, 1.0, 2.0}) {
    for (int T : {1, 2, 3, 7, 10, 64, 100, 999, 1000, 4096}) {
      const IntervalGrid g = geometric_intervals(T, eps);
      EXPECT_EQ(g.interval_count(), interval_count_by_multiplication(T, eps)) << T << " " << eps;
      EXPECT_GE(g.end(), T * (1 - 1e-12));
      for (int k = 1; k <= g.interval_count(); ++k) EXPECT_GT(g.length(k), 0.0);
    }
  }
}

TEST(GeometricIntervals, RejectsNonPositiveEpsilon) {
  EXPECT_THROW(geometric_intervals(10, 0.0), std::invalid_argument);
  EXPECT_THROW(geometric_intervals(10, -1.0), std::invalid_argument);
}

TEST(TimeIndexedLp, ColumnNamesAndBounds) {
  const Instance inst = relay_example(RoutingModel::kFreePath);
  const LPProblem lp = build_time_indexed_lp(inst, 4);
  EXPECT_TRUE(lp.column("x_3_0_4").has_value());
  EXPECT_TRUE(lp.column("xe_3_0_2_s-v1").has_value());
  EXPECT_TRUE(lp.column("X_2_3").has_value());
  EXPECT_FALSE(lp.column("xe_3_0_2_v1-s").has_value());  // enters the source
  EXPECT_FALSE(lp.column("xe_3_0_2_t-v1").has_value());  // leaves the sink
  const int c = *lp.column("C_0");
  EXPECT_DOUBLE_EQ(lp.upper[c], 5.0);
  EXPECT_DOUBLE_EQ(lp.objective[c], 1.0);
  for (int j = 0; j < lp.column_count(); ++j) {
    EXPECT_EQ(lp.column_index.at(lp.column_names[j]), j);
  }
}

TEST(TimeIndexedLp, RowFamilies) {
  const Instance inst = relay_example(RoutingModel::kSinglePath);
  const int T = 6;
  const LPProblem lp = build_time_indexed_lp(inst, T);
  // finish per flow, cum per flow and slot, one completion row per coflow,
  // capacity rows per slot for each edge some path uses.
  const int F = inst.flow_count();
  std::set<int> used;
  for (int k = 0; k < F; ++k) used.insert(inst.flow(k).path.begin(), inst.flow(k).path.end());
  const int E = static_cast<int>(used.size());
  const int J = inst.coflow_count();
  EXPECT_EQ(lp.row_count(), F + F * T + J + E * T);
  EXPECT_EQ(lp.column_count(), F * T + J * T + J);
}

TEST(TimeIndexedLp, ReleasedSlotsOnly) {
  const Instance inst = testing::single_edge_instance(1.0, 1.0, 2);
  const LPProblem lp = build_time_indexed_lp(inst, 4);
  EXPECT_EQ(lp.upper[*lp.column("x_0_0_1")], 0.0);
  EXPECT_EQ(lp.upper[*lp.column("x_0_0_2")], 0.0);
  EXPECT_EQ(lp.upper[*lp.column("x_0_0_3")], 1.0);
  const LPSolution sol = solve(lp);
  ASSERT_EQ(sol.status, SolveStatus::kOptimal);
  EXPECT_NEAR(sol.objective, 3.0, 1e-9);
  EXPECT_THROW(build_time_indexed_lp(inst, 2), FormulationError);
}

TEST(TimeIndexedLp, TrivialInstanceHasUnitCompletion) {
  const Instance inst = testing::single_edge_instance();
  const LPProblem lp = build_time_indexed_lp(inst, 1);
  const LPSolution sol = solve(lp);
  ASSERT_EQ(sol.status, SolveStatus::kOptimal);
  EXPECT_NEAR(sol.objective, 1.0, 1e-12);
  EXPECT_NEAR(sol.primal[*lp.column("x_0_0_1")], 1.0, 1e-12);
}

// Values frozen from the HiGHS solver (tools/mps_linprog.py on the exported
// MPS files); the builtin simplex must reproduce them.
TEST(TimeIndexedLp, RelayExampleValues) {
  const double single = solve_objective(build_time_indexed_lp(relay_example(RoutingModel::kSinglePath), 6));
  const double free = solve_objective(build_time_indexed_lp(relay_example(RoutingModel::kFreePath), 4));
  EXPECT_NEAR(single, 6.0, 1e-7);
  EXPECT_NEAR(free, 5.0, 1e-7);
  // Known integral optima bound the relaxations from above.
  EXPECT_LE(single, 7.0 + 1e-6);
  EXPECT_LE(free, 5.0 + 1e-6);
  EXPECT_GE(single, free - 1e-9);
}

TEST(TimeIndexedLp, SolverOutputRespectsReleases) {
  BenchConfig c;
  c.topology = "ring";
  c.ring_nodes = 4;
  c.jobs = 3;
  c.release_mean = 2.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = generate_instance(c, seed);
    const int T = horizon_upper_bound(inst);
    const LPProblem lp = build_time_indexed_lp(inst, T);
    const LPSolution sol = solve(lp);
    ASSERT_EQ(sol.status, SolveStatus::kOptimal);
    for (int k = 0; k < inst.flow_count(); ++k) {
      const FlowRef ref = inst.ref(k);
      for (int t = 1; t <= inst.flow(k).release && t <= T; ++t) {
        EXPECT_EQ(sol.primal[*lp.column(flow_column(ref.coflow, ref.flow, t))], 0.0);
      }
    }
  }
}

TEST(TimeIndexedLp, FreePathRelaxesSinglePath) {
  BenchConfig c;
  c.topology = "swan-like";
  c.jobs = 3;
  c.max_flows = 2;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    c.model = RoutingModel::kSinglePath;
    const Instance sp = generate_instance(c, seed);
    const Instance fp(sp.network(), sp.coflows(), RoutingModel::kFreePath);
    const int T = horizon_upper_bound(sp);
    EXPECT_LE(solve_objective(build_time_indexed_lp(fp, T)),
              solve_objective(build_time_indexed_lp(sp, T)) + 1e-7);
  }
}

TEST(TimeIndexedLp, WeightScalingScalesObjective) {
  const Instance base = relay_example(RoutingModel::kFreePath);
  std::vector<Coflow> coflows = base.coflows();
  for (size_t j = 0; j < coflows.size(); ++j) coflows[j].weight = 1.0 + j;
  const Instance a(base.network(), coflows, base.model());
  for (Coflow& c : coflows) c.weight *= 3.5;
  const Instance b(base.network(), coflows, base.model());
  const double va = solve_objective(build_time_indexed_lp(a, 4));
  const double vb = solve_objective(build_time_indexed_lp(b, 4));
  EXPECT_NEAR(vb, 3.5 * va, 1e-7 * vb);
}

TEST(TimeIndexedLp, CompletionRowMatchesPrefixIdentityOnSolution) {
  const Instance inst = testing::single_edge_instance(2.0, 1.0);
  const int T = horizon_upper_bound(inst);
  const LPProblem lp = build_time_indexed_lp(inst, T);
  const LPSolution sol = solve(lp);
  const FractionalSchedule f = extract_fractional(lp, sol, inst, T);
  // With one flow the optimum sets C to sum_t t x(t).
  double expected = 0.0;
  for (int t = 1; t <= T; ++t) expected += t * f.flow_fraction(0, t - 1);
  EXPECT_NEAR(f.completion[0], expected, 1e-9);
  EXPECT_LT(prefix_sum_identity_residual(f.flow_fraction.row(0).transpose()), 1e-12);
}

TEST(IntervalLp, MatchesTimeIndexedWhenGridsCoincide) {
  const Instance inst = testing::single_edge_instance();
  const double ti = solve_objective(build_time_indexed_lp(inst, 1));
  const double iv = solve_objective(build_interval_lp(inst, geometric_intervals(1, 0.5)));
  EXPECT_NEAR(iv, ti, 1e-9);
}

TEST(IntervalLp, CapacityScalesWithIntervalLength) {
  // Demand 4 on a unit edge over boundaries 0,1,2,4: intervals of length
  // 1, 1, 2 carry at most 1/4, 1/4, 1/2 of the flow.
  const Instance inst = testing::single_edge_instance(4.0, 1.0);
  const IntervalGrid g = geometric_intervals(4, 1.0);
  const LPProblem lp = build_interval_lp(inst, g);
  const LPSolution sol = solve(lp);
  ASSERT_EQ(sol.status, SolveStatus::kOptimal);
  EXPECT_NEAR(sol.primal[*lp.column("x_0_0_1")], 0.25, 1e-9);
  EXPECT_NEAR(sol.primal[*lp.column("x_0_0_2")], 0.25, 1e-9);
  EXPECT_NEAR(sol.primal[*lp.column("x_0_0_3")], 0.5, 1e-9);
  // C >= 1 + 1*(0.75) + 1*(0.5) + 2*0.
  EXPECT_NEAR(sol.objective, 2.25, 1e-9);
}

TEST(IntervalLp, ReleaseBlocksIntervalsStartingBeforeIt) {
  const Instance inst = testing::single_edge_instance(1.0, 1.0, 3);
  const IntervalGrid g = geometric_intervals(interval_horizon(inst, horizon_upper_bound(inst), 1.0), 1.0);
  const LPProblem lp = build_interval_lp(inst, g);
  // Boundaries 0, 1, 2, 4, 8: (2, 4] starts before the release, (4, 8] does not.
  ASSERT_GE(g.interval_count(), 4);
  EXPECT_EQ(lp.upper[*lp.column("x_0_0_3")], 0.0);
  EXPECT_EQ(lp.upper[*lp.column("x_0_0_4")], 1.0);
}

TEST(IntervalLp, RelayFreePathWithinGridFactorOfTimeIndexed) {
  const Instance inst = relay_example(RoutingModel::kFreePath);
  const double ti = solve_objective(build_time_indexed_lp(inst, 4));
  const IntervalGrid g = geometric_intervals(interval_horizon(inst, 4, 0.2), 0.2);
  const double iv = solve_objective(build_interval_lp(inst, g));
  double weight_sum = 0.0;
  for (const Coflow& c : inst.coflows()) weight_sum += c.weight;
  EXPECT_LE(iv, 1.2 * ti + weight_sum);
  // HiGHS reference values for the interval LP.
  EXPECT_NEAR(solve_objective(build_interval_lp(inst, geometric_intervals(interval_horizon(inst, 4, 0.5436), 0.5436))),
              5.24809904, 1e-7);
}

TEST(ExtractFractional, RowsSumToOneAndCumulativeEndsAtOne) {
  for (RoutingModel m : {RoutingModel::kSinglePath, RoutingModel::kFreePath}) {
    const Instance inst = relay_example(m);
    const int T = horizon_upper_bound(inst);
    const LPProblem lp = build_time_indexed_lp(inst, T);
    const FractionalSchedule f = extract_fractional(lp, solve(lp), inst, T);
    for (int k = 0; k < inst.flow_count(); ++k) EXPECT_NEAR(f.flow_fraction.row(k).sum(), 1.0, 1e-12);
    for (int j = 0; j < inst.coflow_count(); ++j) {
      EXPECT_NEAR(f.coflow_cumulative(j, T - 1), 1.0, 1e-12);
      for (int t = 1; t < T; ++t) EXPECT_GE(f.coflow_cumulative(j, t), f.coflow_cumulative(j, t - 1));
    }
    EXPECT_EQ(f.edge_fraction.empty(), m == RoutingModel::kSinglePath);
  }
}

}  // namespace
}  // namespace coflow
