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

#include "coflow/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace coflow {

namespace {

std::vector<bool> forward_reach(const Network& net, int source, int blocked) {
  std::vector<bool> seen(net.node_count(), false);
  std::deque<int> queue{source};
  seen[source] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == blocked) continue;
    for (int e : net.out_edges(v)) {
      const int w = net.edge(e).dst;
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<bool> backward_reach(const Network& net, int sink, int blocked) {
  std::vector<bool> seen(net.node_count(), false);
  std::deque<int> queue{sink};
  seen[sink] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == blocked) continue;
    for (int e : net.in_edges(v)) {
      const int u = net.edge(e).src;
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  return seen;
}

}  // namespace

bool reachable(const Network& net, int source, int sink) {
  return forward_reach(net, source, -1)[sink];
}

double max_flow_value(const Network& net, int source, int sink) {
  const int m = net.edge_count();
  // Residual arcs: 2e is the forward arc of edge e, 2e+1 its reverse.
  std::vector<double> residual(2 * m);
  for (int e = 0; e < m; ++e) {
    residual[2 * e] = net.edge(e).capacity;
    residual[2 * e + 1] = 0.0;
  }
  auto head = [&](int arc) {
    const Edge& e = net.edge(arc / 2);
    return arc % 2 == 0 ? e.dst : e.src;
  };
  std::vector<std::vector<int>> arcs(net.node_count());
  for (int v = 0; v < net.node_count(); ++v) {
    for (int e : net.out_edges(v)) arcs[v].push_back(2 * e);
    for (int e : net.in_edges(v)) arcs[v].push_back(2 * e + 1);
  }

  double total = 0.0;
  while (true) {
    std::vector<int> parent(net.node_count(), -1);
    std::vector<bool> seen(net.node_count(), false);
    std::deque<int> queue{source};
    seen[source] = true;
    while (!queue.empty() && !seen[sink]) {
      const int v = queue.front();
      queue.pop_front();
      for (int arc : arcs[v]) {
        const int w = head(arc);
        if (!seen[w] && residual[arc] > 1e-12) {
          seen[w] = true;
          parent[w] = arc;
          queue.push_back(w);
        }
      }
    }
    if (!seen[sink]) break;
    double push = std::numeric_limits<double>::infinity();
    for (int v = sink; v != source; v = head(parent[v] ^ 1)) {
      push = std::min(push, residual[parent[v]]);
    }
    for (int v = sink; v != source; v = head(parent[v] ^ 1)) {
      residual[parent[v]] -= push;
      residual[parent[v] ^ 1] += push;
    }
    total += push;
  }
  return total;
}

double path_bottleneck(const Network& net, const std::vector<int>& path) {
  double b = std::numeric_limits<double>::infinity();
  for (int e : path) b = std::min(b, net.edge(e).capacity);
  return path.empty() ? 0.0 : b;
}

std::vector<bool> routable_edges(const Network& net, int source, int sink) {
  const std::vector<bool> from = forward_reach(net, source, sink);
  const std::vector<bool> to = backward_reach(net, sink, source);
  std::vector<bool> mask(net.edge_count(), false);
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    if (edge.src < 0 || edge.dst < 0) continue;
    if (edge.dst == source || edge.src == sink) continue;
    mask[e] = from[edge.src] && to[edge.dst];
  }
  return mask;
}

std::vector<int> random_shortest_path(const Network& net, int source, int sink,
                                      std::mt19937_64& rng) {
  // Count shortest paths into every node, then walk back from the sink
  // choosing predecessors proportionally to their path counts.
  const int n = net.node_count();
  std::vector<int> dist(n, -1);
  std::vector<double> count(n, 0.0);
  std::vector<int> order;
  std::deque<int> queue{source};
  dist[source] = 0;
  count[source] = 1.0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int e : net.out_edges(v)) {
      const int w = net.edge(e).dst;
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
      if (dist[w] == dist[v] + 1) count[w] += count[v];
    }
  }
  if (dist[sink] < 0) return {};

  std::vector<int> path;
  int v = sink;
  while (v != source) {
    std::vector<int> preds;
    std::vector<double> mass;
    for (int e : net.in_edges(v)) {
      const int u = net.edge(e).src;
      if (dist[u] >= 0 && dist[u] + 1 == dist[v]) {
        preds.push_back(e);
        mass.push_back(count[u]);
      }
    }
    std::discrete_distribution<int> pick(mass.begin(), mass.end());
    const int e = preds[pick(rng)];
    path.push_back(e);
    v = net.edge(e).src;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace coflow
