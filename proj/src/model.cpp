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

#include "coflow/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "coflow/graph.hpp"

namespace coflow {

std::string_view to_string(RoutingModel model) {
  return model == RoutingModel::kSinglePath ? "single-path" : "free-path";
}

std::optional<RoutingModel> parse_routing_model(std::string_view text) {
  if (text == "single-path" || text == "single") return RoutingModel::kSinglePath;
  if (text == "free-path" || text == "free") return RoutingModel::kFreePath;
  return std::nullopt;
}

Network::Network(std::vector<std::string> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  out_.resize(nodes_.size());
  in_.resize(nodes_.size());
  const int n = node_count();
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.src < 0 || edge.src >= n || edge.dst < 0 || edge.dst >= n) continue;
    out_[edge.src].push_back(e);
    in_[edge.dst].push_back(e);
  }
}

std::optional<int> Network::node_index(std::string_view name) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end()) return std::nullopt;
  return static_cast<int>(it - nodes_.begin());
}

std::optional<int> Network::edge_index(std::string_view id) const {
  for (int e = 0; e < edge_count(); ++e) {
    if (edges_[e].id == id) return e;
  }
  return std::nullopt;
}

Instance::Instance(Network network, std::vector<Coflow> coflows,
                   RoutingModel model)
    : network_(std::move(network)), coflows_(std::move(coflows)), model_(model) {
  first_.reserve(coflows_.size());
  for (int j = 0; j < coflow_count(); ++j) {
    first_.push_back(static_cast<int>(refs_.size()));
    for (int i = 0; i < static_cast<int>(coflows_[j].flows.size()); ++i) {
      refs_.push_back({j, i});
    }
  }
}

Eigen::VectorXd Instance::weights() const {
  Eigen::VectorXd w(coflow_count());
  for (int j = 0; j < coflow_count(); ++j) w[j] = coflows_[j].weight;
  return w;
}

int Instance::max_release() const {
  int r = 0;
  for (int k = 0; k < flow_count(); ++k) r = std::max(r, flow(k).release);
  return r;
}

namespace {

std::string flow_label(int j, int i) {
  std::ostringstream os;
  os << "coflow " << j << " flow " << i;
  return os.str();
}

bool has_whitespace(const std::string& s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& instance) {
  std::vector<std::string> out;
  const Network& net = instance.network();
  const int n = net.node_count();

  std::set<std::string> names;
  for (const std::string& name : net.nodes()) {
    if (name.empty()) out.push_back("node with empty name");
    if (!names.insert(name).second) out.push_back("node " + name + ": duplicate name");
  }

  std::set<std::string> ids;
  for (const Edge& e : net.edges()) {
    const std::string label = "edge " + e.id;
    if (e.id.empty() || has_whitespace(e.id)) {
      out.push_back(label + ": identifier empty or contains whitespace");
    }
    if (!ids.insert(e.id).second) out.push_back(label + ": duplicate identifier");
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      out.push_back(label + ": endpoint is not a declared node");
    }
    if (!(e.capacity > 0.0) || !std::isfinite(e.capacity)) {
      out.push_back(label + ": capacity not positive");
    }
  }

  for (int j = 0; j < instance.coflow_count(); ++j) {
    const Coflow& cf = instance.coflows()[j];
    if (cf.flows.empty()) out.push_back("coflow " + std::to_string(j) + ": no flows");
    if (!(cf.weight > 0.0) || !std::isfinite(cf.weight)) {
      out.push_back("coflow " + std::to_string(j) + ": weight not positive");
    }
    for (int i = 0; i < static_cast<int>(cf.flows.size()); ++i) {
      const Flow& f = cf.flows[i];
      const std::string label = flow_label(j, i);
      const bool ends_ok = f.source >= 0 && f.source < n && f.sink >= 0 && f.sink < n;
      if (!ends_ok) out.push_back(label + ": endpoint is not a declared node");
      if (ends_ok && f.source == f.sink) out.push_back(label + ": source equals sink");
      if (!(f.demand > 0.0) || !std::isfinite(f.demand)) {
        out.push_back(label + ": demand not positive");
      }
      if (f.release < 0) out.push_back(label + ": negative release");

      if (instance.model() == RoutingModel::kSinglePath && f.path.empty()) {
        out.push_back(label + ": single-path flow has no path");
      }
      if (!f.path.empty()) {
        bool edges_ok = true;
        for (int e : f.path) {
          if (e < 0 || e >= net.edge_count()) {
            out.push_back(label + ": path edge does not exist");
            edges_ok = false;
            break;
          }
        }
        if (edges_ok && ends_ok) {
          if (net.edge(f.path.front()).src != f.source) {
            out.push_back(label + ": path does not start at source");
          }
          if (net.edge(f.path.back()).dst != f.sink) {
            out.push_back(label + ": path does not end at sink");
          }
          for (size_t p = 1; p < f.path.size(); ++p) {
            if (net.edge(f.path[p - 1]).dst != net.edge(f.path[p]).src) {
              out.push_back(label + ": path edges do not chain");
              break;
            }
          }
        }
      }
      if (instance.model() == RoutingModel::kFreePath && ends_ok &&
          f.source != f.sink && !reachable(net, f.source, f.sink)) {
        out.push_back(label + ": sink not reachable from source");
      }
    }
  }
  return out;
}

CompletionReport completion_times(const RateSchedule& schedule,
                                  const Instance& instance) {
  if (schedule.amount.rows() != instance.flow_count() ||
      schedule.amount.cols() != schedule.slot_count) {
    throw std::invalid_argument("schedule shape does not match instance");
  }
  CompletionReport report;
  report.weights = instance.weights();
  report.completion.assign(instance.coflow_count(), 0);
  for (int k = 0; k < instance.flow_count(); ++k) {
    int last = 0;
    for (int t = schedule.slot_count; t >= 1; --t) {
      if (schedule.amount(k, t - 1) > 0.0) {
        last = t;
        break;
      }
    }
    int& c = report.completion[instance.ref(k).coflow];
    c = std::max(c, last);
  }
  report.objective = weighted_objective(report);
  return report;
}

double weighted_objective(const CompletionReport& report) {
  double total = 0.0;
  for (size_t j = 0; j < report.completion.size(); ++j) {
    total += report.weights[static_cast<Eigen::Index>(j)] * report.completion[j];
  }
  return total;
}

RateSchedule to_rate_schedule(const FractionalSchedule& fractional) {
  RateSchedule s;
  s.slot_count = fractional.slot_count;
  s.amount = fractional.flow_fraction;
  s.edge_amount = fractional.edge_fraction;
  return s;
}

Eigen::MatrixXd coflow_cumulative(const Eigen::MatrixXd& flow_fraction,
                                  const Instance& instance) {
  const Eigen::Index slots = flow_fraction.cols();
  Eigen::MatrixXd cum = flow_fraction;
  for (Eigen::Index t = 1; t < slots; ++t) cum.col(t) += cum.col(t - 1);
  Eigen::MatrixXd X(instance.coflow_count(), slots);
  for (int j = 0; j < instance.coflow_count(); ++j) {
    const int first = instance.first_flow(j);
    const int size = static_cast<int>(instance.coflows()[j].flows.size());
    if (size == 0) {
      X.row(j).setOnes();
      continue;
    }
    X.row(j) = cum.middleRows(first, size).colwise().minCoeff();
  }
  return X.cwiseMin(1.0);
}

}  // namespace coflow
