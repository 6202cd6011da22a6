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

#include <algorithm>
#include <filesystem>
#include <random>

#include "coflow/io.hpp"
#include "coflow/model.hpp"
#include "coflow/relay_example.hpp"
#include "test_support.hpp"

namespace coflow {
namespace {

bool has_message(const std::vector<std::string>& errors, const std::string& needle) {
  return std::any_of(errors.begin(), errors.end(),
                     [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

Instance with_edges(const Instance& base, std::vector<Edge> edges) {
  return Instance(Network(base.network().nodes(), std::move(edges)), base.coflows(), base.model());
}

TEST(ValidateInstance, RelayExampleIsValidInBothModels) {
  EXPECT_TRUE(validate_instance(relay_example(RoutingModel::kSinglePath)).empty());
  EXPECT_TRUE(validate_instance(relay_example(RoutingModel::kFreePath)).empty());
}

TEST(ValidateInstance, ZeroCapacityIsReported) {
  const Instance base = relay_example(RoutingModel::kSinglePath);
  std::vector<Edge> edges = base.network().edges();
  edges[3].capacity = 0.0;
  const auto errors = validate_instance(with_edges(base, edges));
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_TRUE(has_message(errors, "capacity not positive"));
  EXPECT_TRUE(has_message(errors, edges[3].id));
}

TEST(ValidateInstance, PathThatSkipsTheSinkIsReported) {
  const Instance base = relay_example(RoutingModel::kSinglePath);
  std::vector<Coflow> coflows = base.coflows();
  coflows[3].flows[0].path.pop_back();  // s -> v2 only
  const auto errors = validate_instance(Instance(base.network(), coflows, base.model()));
  EXPECT_TRUE(has_message(errors, "coflow 3 flow 0: path does not end at sink"));
}

TEST(ValidateInstance, FlowInvariants) {
  const Instance base = relay_example(RoutingModel::kSinglePath);
  std::vector<Coflow> coflows = base.coflows();
  coflows[0].flows[0].sink = coflows[0].flows[0].source;
  coflows[1].flows[0].demand = 0.0;
  coflows[2].flows[0].path.clear();
  coflows[3].weight = -1.0;
  const auto errors = validate_instance(Instance(base.network(), coflows, base.model()));
  EXPECT_TRUE(has_message(errors, "coflow 0 flow 0: source equals sink"));
  EXPECT_TRUE(has_message(errors, "coflow 1 flow 0: demand not positive"));
  EXPECT_TRUE(has_message(errors, "coflow 2 flow 0: single-path flow has no path"));
  EXPECT_TRUE(has_message(errors, "coflow 3: weight not positive"));
}

TEST(ValidateInstance, BrokenChainAndUnknownEndpoint) {
  const Instance base = relay_example(RoutingModel::kSinglePath);
  std::vector<Coflow> coflows = base.coflows();
  const Network& net = base.network();
  coflows[3].flows[0].path = {*net.edge_index("s-v1"), *net.edge_index("v2-t")};
  auto errors = validate_instance(Instance(net, coflows, base.model()));
  EXPECT_TRUE(has_message(errors, "path edges do not chain"));

  std::vector<Edge> edges = net.edges();
  edges[0].dst = -1;
  errors = validate_instance(with_edges(base, edges));
  EXPECT_TRUE(has_message(errors, "endpoint is not a declared node"));
}

TEST(ValidateInstance, FreePathNeedsReachableSink) {
  Network net({"a", "b", "c"}, {{"ab", 0, 1, 1.0}});
  Instance inst(net, {{{Flow{0, 2, 1.0, 0, {}}}, 1.0}}, RoutingModel::kFreePath);
  EXPECT_TRUE(has_message(validate_instance(inst), "sink not reachable from source"));
}

TEST(ValidateInstance, DuplicateEdgeIdsRejectedParallelEdgesAccepted) {
  Network dup({"a", "b"}, {{"e", 0, 1, 1.0}, {"e", 0, 1, 1.0}});
  Instance a(dup, {{{Flow{0, 1, 1.0, 0, {}}}, 1.0}}, RoutingModel::kFreePath);
  EXPECT_TRUE(has_message(validate_instance(a), "duplicate identifier"));
  Network par({"a", "b"}, {{"e1", 0, 1, 1.0}, {"e2", 0, 1, 1.0}});
  Instance b(par, {{{Flow{0, 1, 1.0, 0, {}}}, 1.0}}, RoutingModel::kFreePath);
  EXPECT_TRUE(validate_instance(b).empty());
}

TEST(CompletionTimes, SingleFlowInSlotOne) {
  const Instance inst = testing::single_edge_instance();
  const CompletionReport r = completion_times(testing::single_flow_schedule({1.0}), inst);
  EXPECT_EQ(r.completion, std::vector<int>{1});
  EXPECT_DOUBLE_EQ(r.objective, 1.0);
}

TEST(CompletionTimes, LastPositiveSlotCounts) {
  const Instance inst = testing::single_edge_instance();
  std::vector<double> a(10, 0.0);
  a[0] = 0.9;
  a[9] = 0.1;
  const CompletionReport r = completion_times(testing::single_flow_schedule(a), inst);
  EXPECT_EQ(r.completion, std::vector<int>{10});
}

TEST(CompletionTimes, RelaySchedules) {
  const Instance sp = relay_example(RoutingModel::kSinglePath);
  const CompletionReport a = completion_times(relay_single_path_schedule(sp), sp);
  EXPECT_EQ(a.completion, (std::vector<int>{1, 1, 1, 4}));
  EXPECT_DOUBLE_EQ(weighted_objective(a), 7.0);

  const Instance fp = relay_example(RoutingModel::kFreePath);
  const CompletionReport b = completion_times(relay_split_schedule(fp), fp);
  EXPECT_EQ(b.completion, (std::vector<int>{1, 1, 1, 2}));
  EXPECT_DOUBLE_EQ(weighted_objective(b), 5.0);
}

TEST(CompletionTimes, ZeroWeightsGiveZeroObjective) {
  CompletionReport r;
  r.completion = {3, 7, 2};
  r.weights = Eigen::VectorXd::Zero(3);
  EXPECT_EQ(weighted_objective(r), 0.0);
}

TEST(CompletionTimes, ShapeMismatchThrows) {
  const Instance inst = relay_example(RoutingModel::kSinglePath);
  EXPECT_THROW(completion_times(testing::single_flow_schedule({1.0}), inst),
               std::invalid_argument);
}

TEST(CompletionTimes, AddingLaterTransmissionNeverDecreasesCompletion) {
  const Instance inst = relay_example(RoutingModel::kSinglePath);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    RateSchedule s;
    s.slot_count = 6;
    s.amount = Eigen::MatrixXd::Zero(4, 6);
    for (int k = 0; k < 4; ++k) {
      for (int t = 0; t < 6; ++t) {
        if (u(rng) < 0.4) s.amount(k, t) = u(rng);
      }
    }
    const CompletionReport before = completion_times(s, inst);
    const int k = static_cast<int>(rng() % 4);
    const int t = static_cast<int>(rng() % 6);
    s.amount(k, t) += 0.5;
    const CompletionReport after = completion_times(s, inst);
    for (int j = 0; j < 4; ++j) EXPECT_GE(after.completion[j], before.completion[j]);
  }
}

TEST(CoflowCumulative, MinimumOverFlows) {
  Network net({"a", "b"}, {{"e", 0, 1, 1.0}});
  Flow f{0, 1, 1.0, 0, {0}};
  Instance inst(net, {{{f, f}, 1.0}}, RoutingModel::kSinglePath);
  Eigen::MatrixXd x(2, 3);
  x << 0.5, 0.5, 0.0,
       0.2, 0.3, 0.5;
  const Eigen::MatrixXd X = coflow_cumulative(x, inst);
  EXPECT_NEAR(X(0, 0), 0.2, 1e-15);
  EXPECT_NEAR(X(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(X(0, 2), 1.0, 1e-15);
}

TEST(InstanceJson, RoundTrip) {
  for (RoutingModel m : {RoutingModel::kSinglePath, RoutingModel::kFreePath}) {
    const Instance inst = relay_example(m);
    const nlohmann::json doc = instance_to_json(inst);
    EXPECT_EQ(doc.at("format"), 1);
    const Instance back = instance_from_json(doc);
    EXPECT_EQ(instance_to_json(back), doc);
    EXPECT_TRUE(validate_instance(back).empty());
  }
}

TEST(InstanceJson, FractionalReleaseRoundsUpAndUnknownNamesSurfaceInValidation) {
  nlohmann::json doc = instance_to_json(testing::single_edge_instance());
  doc["coflows"][0]["flows"][0]["release"] = 2.3;
  EXPECT_EQ(instance_from_json(doc).flow(0).release, 3);
  doc["coflows"][0]["flows"][0]["dst"] = "nowhere";
  EXPECT_FALSE(validate_instance(instance_from_json(doc)).empty());
}

TEST(InstanceJson, RejectsWrongFormatAndMissingFields) {
  nlohmann::json doc = instance_to_json(testing::single_edge_instance());
  doc["format"] = 2;
  EXPECT_THROW(instance_from_json(doc), IoError);
  doc = instance_to_json(testing::single_edge_instance());
  doc.erase("edges");
  EXPECT_THROW(instance_from_json(doc), IoError);
  EXPECT_THROW(read_json_file("/nonexistent/instance.json"), IoError);
}

TEST(ScheduleJson, RoundTripBothModels) {
  const Instance sp = relay_example(RoutingModel::kSinglePath);
  const RateSchedule a = relay_single_path_schedule(sp);
  const RateSchedule a2 = schedule_from_json(schedule_to_json(a, sp), sp);
  EXPECT_EQ(a2.slot_count, a.slot_count);
  EXPECT_TRUE(a2.amount.isApprox(a.amount));
  EXPECT_TRUE(a2.edge_amount.empty());

  const Instance fp = relay_example(RoutingModel::kFreePath);
  const RateSchedule b = relay_split_schedule(fp);
  const RateSchedule b2 = schedule_from_json(schedule_to_json(b, fp), fp);
  ASSERT_EQ(b2.edge_amount.size(), b.edge_amount.size());
  for (size_t k = 0; k < b.edge_amount.size(); ++k) {
    EXPECT_TRUE(b2.edge_amount[k].isApprox(b.edge_amount[k]) ||
                (b.edge_amount[k].isZero() && b2.edge_amount[k].isZero()));
  }
}

TEST(ScheduleJson, FileRoundTrip) {
  const Instance sp = relay_example(RoutingModel::kSinglePath);
  const auto path = std::filesystem::temp_directory_path() / "coflow_model_test_schedule.json";
  write_json_file(path.string(), schedule_to_json(relay_single_path_schedule(sp), sp));
  const RateSchedule s = schedule_from_json(read_json_file(path.string()), sp);
  EXPECT_DOUBLE_EQ(completion_times(s, sp).objective, 7.0);
  std::filesystem::remove(path);
}

TEST(RoutingModelText, ParsesBothSpellings) {
  EXPECT_EQ(parse_routing_model("single-path"), RoutingModel::kSinglePath);
  EXPECT_EQ(parse_routing_model("free"), RoutingModel::kFreePath);
  EXPECT_FALSE(parse_routing_model("multi").has_value());
  EXPECT_EQ(to_string(RoutingModel::kFreePath), "free-path");
}

}  // namespace
}  // namespace coflow
