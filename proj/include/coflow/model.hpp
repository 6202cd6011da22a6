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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace coflow {

enum class RoutingModel { kSinglePath, kFreePath };

std::string_view to_string(RoutingModel model);
std::optional<RoutingModel> parse_routing_model(std::string_view text);

/// Directed link. Endpoints are node indices; -1 marks an endpoint name that
/// did not resolve to a declared node.
struct Edge {
  std::string id;
  int src = -1;
  int dst = -1;
  double capacity = 0.0;  // data units per slot
};

class Network {
 public:
  Network() = default;
  Network(std::vector<std::string> nodes, std::vector<Edge> edges);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }

  std::optional<int> node_index(std::string_view name) const;
  std::optional<int> edge_index(std::string_view id) const;

  // Adjacency only covers edges whose endpoints resolved.
  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

struct Flow {
  int source = -1;
  int sink = -1;
  double demand = 0.0;
  int release = 0;        // slot index; no transmission in slots t <= release
  std::vector<int> path;  // edge indices, single-path model only
};

struct Coflow {
  std::vector<Flow> flows;
  double weight = 1.0;
};

struct FlowRef {
  int coflow = 0;
  int flow = 0;
};

/// A coflow scheduling problem. Flows are addressed either by (coflow, flow)
/// or by a flat index in coflow-major order.
class Instance {
 public:
  Instance() = default;
  Instance(Network network, std::vector<Coflow> coflows, RoutingModel model);

  const Network& network() const { return network_; }
  const std::vector<Coflow>& coflows() const { return coflows_; }
  RoutingModel model() const { return model_; }

  int coflow_count() const { return static_cast<int>(coflows_.size()); }
  int flow_count() const { return static_cast<int>(refs_.size()); }
  int flat_index(int coflow, int flow) const { return first_[coflow] + flow; }
  FlowRef ref(int k) const { return refs_[k]; }
  const Flow& flow(int k) const {
    return coflows_[refs_[k].coflow].flows[refs_[k].flow];
  }
  /// Flat indices of the flows of `coflow` form [first, first + size).
  int first_flow(int coflow) const { return first_[coflow]; }

  Eigen::VectorXd weights() const;
  int max_release() const;

 private:
  Network network_;
  std::vector<Coflow> coflows_;
  RoutingModel model_ = RoutingModel::kSinglePath;
  std::vector<int> first_;
  std::vector<FlowRef> refs_;
};

/// LP-side view of a schedule: per-slot fractions of each flow, the
/// per-coflow cumulative fraction, and the LP completion variable.
/// Column t-1 holds slot t.
struct FractionalSchedule {
  int slot_count = 0;
  Eigen::MatrixXd flow_fraction;               // flows x slots
  std::vector<Eigen::MatrixXd> edge_fraction;  // free-path: per flow, edges x slots
  Eigen::MatrixXd coflow_cumulative;           // coflows x slots
  Eigen::VectorXd completion;                  // LP completion per coflow
};

/// Concrete transmission plan. Amounts are fractions of each flow's demand.
/// Free-path schedules carry a per-edge breakdown; single-path schedules
/// leave `edge_amount` empty and route along the declared path.
struct RateSchedule {
  int slot_count = 0;
  Eigen::MatrixXd amount;                    // flows x slots
  std::vector<Eigen::MatrixXd> edge_amount;  // free-path: per flow, edges x slots
};

struct CompletionReport {
  std::vector<int> completion;  // slot index per coflow, 0 if nothing sent
  Eigen::VectorXd weights;
  double objective = 0.0;
};

/// Every violated instance invariant, each naming the offending item.
std::vector<std::string> validate_instance(const Instance& instance);

/// Last slot with positive transmission per coflow and the weighted sum.
/// Throws std::invalid_argument on a shape mismatch.
CompletionReport completion_times(const RateSchedule& schedule,
                                  const Instance& instance);

double weighted_objective(const CompletionReport& report);

/// Slot-level view of a fractional schedule, dropping the LP-only fields.
RateSchedule to_rate_schedule(const FractionalSchedule& fractional);

/// Recomputes X_j(t) as the minimum cumulative fraction over the coflow's
/// flows.
Eigen::MatrixXd coflow_cumulative(const Eigen::MatrixXd& flow_fraction,
                                  const Instance& instance);

}  // namespace coflow
