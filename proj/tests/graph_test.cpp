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

#include <map>

#include "coflow/graph.hpp"
#include "coflow/relay_example.hpp"

namespace coflow {
namespace {

TEST(MaxFlow, RelayNetworkCarriesThreeUnits) {
  const Instance inst = relay_example(RoutingModel::kFreePath);
  const Network& net = inst.network();
  EXPECT_NEAR(max_flow_value(net, 0, 4), 3.0, 1e-12);
  EXPECT_NEAR(max_flow_value(net, 1, 4), 2.0, 1e-12);  // v1 has two outgoing unit links
}

TEST(MaxFlow, DisconnectedPairIsZero) {
  Network net({"a", "b", "c"}, {{"ab", 0, 1, 2.0}});
  EXPECT_EQ(max_flow_value(net, 0, 2), 0.0);
  EXPECT_FALSE(reachable(net, 0, 2));
  EXPECT_TRUE(reachable(net, 0, 1));
}

TEST(RoutableEdges, ExcludesEdgesIntoSourceAndOutOfSink) {
  const Instance inst = relay_example(RoutingModel::kFreePath);
  const Network& net = inst.network();
  const std::vector<bool> mask = routable_edges(net, 0, 4);
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    const bool expected = edge.dst != 0 && edge.src != 4;
    EXPECT_EQ(mask[e], expected) << edge.id;
  }
}

TEST(RoutableEdges, DropsDeadEnds) {
  // a -> b -> c with a dangling b -> d.
  Network net({"a", "b", "c", "d"}, {{"ab", 0, 1, 1}, {"bc", 1, 2, 1}, {"bd", 1, 3, 1}});
  const std::vector<bool> mask = routable_edges(net, 0, 2);
  EXPECT_TRUE(mask[0]);
  EXPECT_TRUE(mask[1]);
  EXPECT_FALSE(mask[2]);
}

TEST(PathBottleneck, MinimumCapacity) {
  Network net({"a", "b", "c"}, {{"ab", 0, 1, 2.5}, {"bc", 1, 2, 0.5}});
  EXPECT_DOUBLE_EQ(path_bottleneck(net, {0, 1}), 0.5);
}

TEST(RandomShortestPath, UniformOverShortestPaths) {
  const Instance inst = relay_example(RoutingModel::kFreePath);
  const Network& net = inst.network();
  std::mt19937_64 rng(3);
  std::map<std::vector<int>, int> counts;
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) {
    const std::vector<int> p = random_shortest_path(net, 0, 4, rng);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(net.edge(p.front()).src, 0);
    EXPECT_EQ(net.edge(p.back()).dst, 4);
    EXPECT_EQ(net.edge(p[0]).dst, net.edge(p[1]).src);
    ++counts[p];
  }
  ASSERT_EQ(counts.size(), 3u);
  for (const auto& [path, c] : counts) EXPECT_NEAR(c / double(draws), 1.0 / 3.0, 0.015);
}

TEST(RandomShortestPath, EmptyWhenUnreachable) {
  Network net({"a", "b"}, {{"ba", 1, 0, 1.0}});
  std::mt19937_64 rng(1);
  EXPECT_TRUE(random_shortest_path(net, 0, 1, rng).empty());
}

}  // namespace
}  // namespace coflow
