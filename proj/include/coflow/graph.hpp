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

#include <random>
#include <vector>

#include "coflow/model.hpp"

namespace coflow {

bool reachable(const Network& net, int source, int sink);

/// Edmonds-Karp maximum flow value between two nodes.
double max_flow_value(const Network& net, int source, int sink);

/// Minimum capacity along an edge path.
double path_bottleneck(const Network& net, const std::vector<int>& path);

/// Edges that lie on some source-to-sink walk avoiding edges into the source
/// and out of the sink. Returned as a mask over all edges.
std::vector<bool> routable_edges(const Network& net, int source, int sink);

/// Uniformly random shortest (hop-count) path, or empty if unreachable.
std::vector<int> random_shortest_path(const Network& net, int source, int sink,
                                      std::mt19937_64& rng);

}  // namespace coflow
