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

#include "coflow/relay_example.hpp"

#include <stdexcept>

namespace coflow {

namespace {

int edge_of(const Network& net, const char* id) {
  const auto e = net.edge_index(id);
  if (!e) throw std::logic_error(std::string("relay example lacks edge ") + id);
  return *e;
}

}  // namespace

Instance relay_example(RoutingModel model) {
  std::vector<std::string> nodes{"s", "v1", "v2", "v3", "t"};
  std::vector<Edge> edges;
  for (int relay = 1; relay <= 3; ++relay) {
    const std::string v = "v" + std::to_string(relay);
    edges.push_back({"s-" + v, 0, relay, 1.0});
    edges.push_back({v + "-s", relay, 0, 1.0});
    edges.push_back({v + "-t", relay, 4, 1.0});
    edges.push_back({"t-" + v, 4, relay, 1.0});
  }
  Network net(nodes, edges);
  std::vector<Coflow> coflows;
  for (int relay = 1; relay <= 3; ++relay) {
    Flow f{relay, 4, 1.0, 0, {}};
    if (model == RoutingModel::kSinglePath) {
      f.path = {edge_of(net, ("v" + std::to_string(relay) + "-t").c_str())};
    }
    coflows.push_back({{f}, 1.0});
  }
  Flow big{0, 4, 3.0, 0, {}};
  if (model == RoutingModel::kSinglePath) big.path = {edge_of(net, "s-v2"), edge_of(net, "v2-t")};
  coflows.push_back({{big}, 1.0});
  return Instance(std::move(net), std::move(coflows), model);
}

RateSchedule relay_single_path_schedule(const Instance& single_path) {
  RateSchedule s;
  s.slot_count = 4;
  s.amount = Eigen::MatrixXd::Zero(single_path.flow_count(), 4);
  s.amount.col(0).head(3).setOnes();
  s.amount.row(3).tail(3).setConstant(1.0 / 3.0);
  return s;
}

RateSchedule relay_split_schedule(const Instance& free_path) {
  const Network& net = free_path.network();
  RateSchedule s;
  s.slot_count = 2;
  s.amount = Eigen::MatrixXd::Zero(free_path.flow_count(), 2);
  s.edge_amount.assign(free_path.flow_count(), Eigen::MatrixXd::Zero(net.edge_count(), 2));
  for (int relay = 1; relay <= 3; ++relay) {
    const std::string v = "v" + std::to_string(relay);
    s.amount(relay - 1, 0) = 1.0;
    s.edge_amount[relay - 1](edge_of(net, (v + "-t").c_str()), 0) = 1.0;
    s.edge_amount[3](edge_of(net, ("s-" + v).c_str()), 1) = 1.0 / 3.0;
    s.edge_amount[3](edge_of(net, (v + "-t").c_str()), 1) = 1.0 / 3.0;
  }
  s.amount(3, 1) = 1.0;
  return s;
}

}  // namespace coflow
