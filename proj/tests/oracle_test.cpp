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

#include <random>

#include "coflow/formulation.hpp"
#include "coflow/oracle.hpp"
#include "coflow/relay_example.hpp"
#include "coflow/simplex.hpp"
#include "test_support.hpp"

namespace coflow {
namespace {

bool has_kind(const std::vector<ScheduleViolation>& v, const std::string& kind) {
  return std::any_of(v.begin(), v.end(), [&](const ScheduleViolation& x) { return x.kind == kind; });
}

// Midpoint rule over lambda in (0, 1] for the first time the interpolated
// curve reaches lambda, sweeping the slots once as lambda increases.
double midpoint_lambda_integral(const Eigen::VectorXd& X, int n) {
  double total = 0.0;
  Eigen::Index t = 0;
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double level = (i + 0.5) / n;
    while (t < X.size() && X[t] < level) prev = X[t++];
    total += t == X.size() ? static_cast<double>(X.size())
                           : t + (level - prev) / (X[t] - prev);
  }
  return total / n;
}

std::vector<double> random_fractions(std::mt19937_64& rng, int T) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(T);
  double sum = 0.0;
  for (double& v : x) {
    v = u(rng) < 0.4 ? 0.0 : u(rng);
    sum += v;
  }
  if (sum == 0.0) {
    x.back() = 1.0;
    return x;
  }
  for (double& v : x) v /= sum;
  return x;
}

TEST(VerifySchedule, RelaySchedulesAreFeasible) {
  const Instance sp = relay_example(RoutingModel::kSinglePath);
  EXPECT_TRUE(verify_schedule(relay_single_path_schedule(sp), sp).empty());
  const Instance fp = relay_example(RoutingModel::kFreePath);
  EXPECT_TRUE(verify_schedule(relay_split_schedule(fp), fp).empty());
}

TEST(VerifySchedule, DoubledAmountExceedsDemand) {
  const Instance sp = relay_example(RoutingModel::kSinglePath);
  RateSchedule s = relay_single_path_schedule(sp);
  s.amount(3, 3) *= 2.0;
  const auto v = verify_schedule(s, sp);
  ASSERT_TRUE(has_kind(v, "cumulative exceeds demand"));
  const auto it = std::find_if(v.begin(), v.end(), [](const auto& x) { return x.kind == "cumulative exceeds demand"; });
  EXPECT_EQ(it->slot, 4);
  EXPECT_EQ(it->flow, 3);
  EXPECT_NEAR(it->magnitude, 1.0 / 3.0, 1e-12);
}

TEST(VerifySchedule, CapacityOverload) {
  const Instance sp = relay_example(RoutingModel::kSinglePath);
  RateSchedule s = relay_single_path_schedule(sp);
  // Move a third of the long flow into slot 1, where (v2, t) is already full.
  s.amount(3, 0) = 1.0 / 3.0;
  s.amount(3, 3) = 0.0;
  const auto v = verify_schedule(s, sp);
  ASSERT_TRUE(has_kind(v, "capacity exceeded"));
  EXPECT_EQ(v.front().slot, 1);
  EXPECT_EQ(sp.network().edge(v.front().edge).id, "v2-t");
  EXPECT_NEAR(v.front().magnitude, 1.0, 1e-12);
}

TEST(VerifySchedule, ReleaseAndCompletion) {
  const Instance inst = testing::single_edge_instance(1.0, 1.0, 1);
  EXPECT_TRUE(has_kind(verify_schedule(testing::single_flow_schedule({1.0}), inst),
                       "transmission before release"));
  EXPECT_TRUE(verify_schedule(testing::single_flow_schedule({0.0, 1.0}), inst).empty());
  EXPECT_TRUE(has_kind(verify_schedule(testing::single_flow_schedule({0.0, 0.5}), inst),
                       "flow not completed"));
  EXPECT_TRUE(has_kind(verify_schedule(testing::single_flow_schedule({0.0, 1.5, -0.5}), inst),
                       "negative amount"));
}

TEST(VerifySchedule, FreePathBalance) {
  const Instance fp = relay_example(RoutingModel::kFreePath);
  const int sv1 = *fp.network().edge_index("s-v1");
  const int v1t = *fp.network().edge_index("v1-t");
  RateSchedule broken = relay_split_schedule(fp);
  broken.edge_amount[3](v1t, 1) = 0.0;  // data vanishes at v1
  auto v = verify_schedule(broken, fp);
  EXPECT_TRUE(has_kind(v, "conservation violated"));
  EXPECT_TRUE(has_kind(v, "sink balance violated"));

  broken = relay_split_schedule(fp);
  broken.edge_amount[3](sv1, 1) = 0.0;
  broken.edge_amount[3](v1t, 1) = 0.0;  // consistent paths, but only 2/3 routed
  EXPECT_TRUE(has_kind(verify_schedule(broken, fp), "source balance violated"));

  broken = relay_split_schedule(fp);
  broken.edge_amount.clear();
  EXPECT_TRUE(has_kind(verify_schedule(broken, fp), "edge breakdown missing or misshapen"));
}

TEST(VerifySchedule, SinglePathTrafficMustStayOnPath) {
  const Instance sp = relay_example(RoutingModel::kSinglePath);
  RateSchedule s = relay_single_path_schedule(sp);
  s.edge_amount.assign(sp.flow_count(), Eigen::MatrixXd::Zero(sp.network().edge_count(), 4));
  for (int k = 0; k < sp.flow_count(); ++k) {
    for (int e : sp.flow(k).path) s.edge_amount[k].row(e) = s.amount.row(k);
  }
  EXPECT_TRUE(verify_schedule(s, sp).empty());
  s.edge_amount[3](*sp.network().edge_index("s-v1"), 1) = 0.1;
  EXPECT_TRUE(has_kind(verify_schedule(s, sp), "transmission off the declared path"));
}

TEST(VerifySchedule, ShapeMismatch) {
  const Instance sp = relay_example(RoutingModel::kSinglePath);
  EXPECT_TRUE(has_kind(verify_schedule(testing::single_flow_schedule({1.0}), sp),
                       "schedule shape mismatch"));
}

TEST(VerifySchedule, DescribeNamesTheEdge) {
  const Instance sp = relay_example(RoutingModel::kSinglePath);
  const ScheduleViolation v{"capacity exceeded", 2, -1, *sp.network().edge_index("v2-t"), 0.5};
  EXPECT_EQ(v.describe(sp), "capacity exceeded at slot 2 on edge v2-t (magnitude 0.5)");
}

TEST(InterpolationChecks, SingleSlot) {
  const Instance inst = testing::single_edge_instance();
  const auto c = continuous_interpolation_checks(testing::single_flow_fractional(inst, {1.0}));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_DOUBLE_EQ(c[0].integral, 0.5);
  EXPECT_DOUBLE_EQ(c[0].discrete_bound - 0.5, 0.5);
  EXPECT_NEAR(c[0].lambda_integral, 0.5, 1e-12);
}

TEST(InterpolationChecks, LateSliver) {
  const Instance inst = testing::single_edge_instance();
  std::vector<double> x(10, 0.0);
  x[0] = 0.9;
  x[9] = 0.1;
  const auto c = continuous_interpolation_checks(testing::single_flow_fractional(inst, x));
  EXPECT_NEAR(c[0].integral, 1.4, 1e-12);
  EXPECT_NEAR(c[0].discrete_bound, 1.9, 1e-12);
  EXPECT_NEAR(c[0].lemma_slack, 0.0, 1e-12);  // C = 1.9
  EXPECT_NEAR(c[0].lambda_integral, 1.4, 1e-12);
}

TEST(InterpolationChecks, RandomVectors) {
  const Instance inst = testing::single_edge_instance();
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<double> x = random_fractions(rng, 1 + trial % 25);
    const FractionalSchedule f = testing::single_flow_fractional(inst, x);
    const auto c = continuous_interpolation_checks(f);
    EXPECT_LE(c[0].identity_residual, 1e-12);
    EXPECT_GE(c[0].lemma_slack, -1e-12);
    // Midpoint rule over lambda with a linear-scan inverse.
    const Eigen::VectorXd X = f.coflow_cumulative.row(0).transpose();
    const double q = midpoint_lambda_integral(X, 1'000'000);
    EXPECT_NEAR(c[0].lambda_integral, q, 1e-4);
    EXPECT_NEAR(c[0].lambda_integral, c[0].integral, 1e-9);
  }
}

TEST(InterpolationChecks, SolverOutputsSatisfyTheBound) {
  for (RoutingModel m : {RoutingModel::kSinglePath, RoutingModel::kFreePath}) {
    const Instance inst = relay_example(m);
    const int T = horizon_upper_bound(inst);
    const LPProblem lp = build_time_indexed_lp(inst, T);
    const auto checks = continuous_interpolation_checks(extract_fractional(lp, solve(lp), inst, T));
    for (const auto& c : checks) {
      EXPECT_LE(c.identity_residual, 1e-9);
      EXPECT_GE(c.lemma_slack, -1e-9);
      EXPECT_LE(c.counting_residual, 1e-4);
    }
  }
}

TEST(PrefixSumIdentity, RandomVectors) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<double> x = random_fractions(rng, 1 + trial % 40);
    EXPECT_LE(prefix_sum_identity_residual(Eigen::Map<const Eigen::VectorXd>(x.data(), x.size())), 1e-12);
  }
}

TEST(FirstTimeReaching, InterpolatesInsideSlots) {
  Eigen::VectorXd X(3);
  X << 0.5, 0.5, 1.0;
  EXPECT_NEAR(first_time_reaching(X, 0.25), 0.5, 1e-12);
  EXPECT_NEAR(first_time_reaching(X, 0.5), 1.0, 1e-12);
  EXPECT_NEAR(first_time_reaching(X, 0.75), 2.5, 1e-12);
}

TEST(LpLowerBound, ComparesWithRelativeSlack) {
  EXPECT_FALSE(check_lp_lower_bound(1.0, 1.0).has_value());
  EXPECT_FALSE(check_lp_lower_bound(5.0, 5.0 + 1e-3).has_value());
  EXPECT_FALSE(check_lp_lower_bound(1000.0005, 1000.0).has_value());
  EXPECT_TRUE(check_lp_lower_bound(5.1, 5.0).has_value());
}

TEST(LpLowerBound, TrivialAndRelayInstances) {
  const Instance one = testing::single_edge_instance();
  EXPECT_NEAR(solve(build_time_indexed_lp(one, 1)).objective, 1.0, 1e-12);
  const Instance fp = relay_example(RoutingModel::kFreePath);
  EXPECT_FALSE(check_lp_lower_bound(solve(build_time_indexed_lp(fp, 4)).objective, 5.0).has_value());
}

}  // namespace
}  // namespace coflow
