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

#include "coflow/formulation.hpp"

#include <cmath>
#include <map>

#include "coflow/graph.hpp"

namespace coflow {

namespace {

// ceil with a relative guard so that exact quotients do not round up.
int guarded_ceil(double v) {
  return static_cast<int>(std::ceil(v - 1e-9 * std::max(1.0, std::abs(v))));
}

// Smallest k >= 0 with (1+eps)^k >= value, for value >= 1.
int geometric_exponent(double value, double epsilon) {
  int k = std::max(0, guarded_ceil(std::log(value) / std::log1p(epsilon)));
  while (k > 0 && std::pow(1.0 + epsilon, k - 1) >= value) --k;
  while (std::pow(1.0 + epsilon, k) < value) ++k;
  return k;
}

struct Period {
  double length;
  double start;
};

// Shared assembly for both relaxations. Period p (1-based) has the given
// length; flow f may use period p only if `allowed(f, p)`.
template <typename Allowed>
LPProblem assemble(const Instance& instance, const std::vector<Period>& periods,
                   double completion_cap, Allowed allowed) {
  const Network& net = instance.network();
  const int P = static_cast<int>(periods.size());
  const bool free_path = instance.model() == RoutingModel::kFreePath;
  LPBuilder lp;

  // x_j_i_t, and in free-path the per-edge split over routable edges.
  std::vector<std::vector<int>> x(instance.flow_count(), std::vector<int>(P + 1, -1));
  std::vector<std::vector<bool>> routable(instance.flow_count());
  // xe[k][t] maps edge -> column.
  std::vector<std::vector<std::map<int, int>>> xe(instance.flow_count());
  for (int k = 0; k < instance.flow_count(); ++k) {
    const FlowRef ref = instance.ref(k);
    const Flow& f = instance.flow(k);
    if (free_path) {
      routable[k] = routable_edges(net, f.source, f.sink);
      xe[k].resize(P + 1);
    }
    for (int t = 1; t <= P; ++t) {
      const double ub = allowed(f, t) ? 1.0 : 0.0;
      x[k][t] = lp.add_column(flow_column(ref.coflow, ref.flow, t), 0.0, 0.0, ub);
      if (!free_path) continue;
      for (int e = 0; e < net.edge_count(); ++e) {
        if (!routable[k][e]) continue;
        xe[k][t][e] = lp.add_column(edge_column(ref.coflow, ref.flow, t, net.edge(e).id),
                                    0.0, 0.0, ub);
      }
    }
  }
  std::vector<std::vector<int>> X(instance.coflow_count(), std::vector<int>(P + 1, -1));
  std::vector<int> C(instance.coflow_count());
  for (int j = 0; j < instance.coflow_count(); ++j) {
    for (int t = 1; t <= P; ++t) {
      X[j][t] = lp.add_column(cumulative_column(j, t), 0.0, 0.0, 1.0);
    }
    C[j] = lp.add_column(completion_column(j), instance.coflows()[j].weight, 0.0,
                         completion_cap);
  }

  // Every flow is fully scheduled.
  for (int k = 0; k < instance.flow_count(); ++k) {
    const FlowRef ref = instance.ref(k);
    std::vector<std::pair<int, double>> terms;
    for (int t = 1; t <= P; ++t) terms.emplace_back(x[k][t], 1.0);
    lp.add_row("finish_" + std::to_string(ref.coflow) + "_" + std::to_string(ref.flow),
               terms, Relation::kEqual, 1.0);
  }
  // X_j(t) <= sum_{l <= t} x_j^i(l), one row per (coflow, flow, period).
  for (int k = 0; k < instance.flow_count(); ++k) {
    const FlowRef ref = instance.ref(k);
    std::vector<std::pair<int, double>> terms;
    for (int t = 1; t <= P; ++t) {
      terms.emplace_back(x[k][t], -1.0);
      std::vector<std::pair<int, double>> row = terms;
      row.emplace_back(X[ref.coflow][t], 1.0);
      lp.add_row("cum_" + std::to_string(ref.coflow) + "_" + std::to_string(ref.flow) +
                     "_" + std::to_string(t),
                 row, Relation::kLessEqual, 0.0);
    }
  }
  // C_j >= 1 + sum_t len_t (1 - X_j(t)), as C_j + sum_t len_t X_j(t) >= 1 + sum_t len_t.
  double total_length = 0.0;
  for (const Period& p : periods) total_length += p.length;
  for (int j = 0; j < instance.coflow_count(); ++j) {
    std::vector<std::pair<int, double>> terms{{C[j], 1.0}};
    for (int t = 1; t <= P; ++t) terms.emplace_back(X[j][t], periods[t - 1].length);
    lp.add_row("compl_" + std::to_string(j), terms, Relation::kGreaterEqual,
               1.0 + total_length);
  }

  if (!free_path) {
    for (int t = 1; t <= P; ++t) {
      std::vector<std::vector<std::pair<int, double>>> load(net.edge_count());
      for (int k = 0; k < instance.flow_count(); ++k) {
        const Flow& f = instance.flow(k);
        for (int e : f.path) load[e].emplace_back(x[k][t], f.demand);
      }
      for (int e = 0; e < net.edge_count(); ++e) {
        if (load[e].empty()) continue;
        lp.add_row("cap_" + net.edge(e).id + "_" + std::to_string(t), load[e],
                   Relation::kLessEqual, periods[t - 1].length * net.edge(e).capacity);
      }
    }
    return std::move(lp).build();
  }

  for (int k = 0; k < instance.flow_count(); ++k) {
    const FlowRef ref = instance.ref(k);
    const Flow& f = instance.flow(k);
    const std::string tag = std::to_string(ref.coflow) + "_" + std::to_string(ref.flow);
    for (int t = 1; t <= P; ++t) {
      const auto& cols = xe[k][t];
      std::vector<std::pair<int, double>> src{{x[k][t], -1.0}};
      std::vector<std::pair<int, double>> snk{{x[k][t], -1.0}};
      std::map<int, std::vector<std::pair<int, double>>> balance;
      for (const auto& [e, col] : cols) {
        const Edge& edge = net.edge(e);
        if (edge.src == f.source) src.emplace_back(col, 1.0);
        if (edge.dst == f.sink) snk.emplace_back(col, 1.0);
        if (edge.dst != f.source && edge.dst != f.sink) balance[edge.dst].emplace_back(col, 1.0);
        if (edge.src != f.source && edge.src != f.sink) balance[edge.src].emplace_back(col, -1.0);
      }
      const std::string suffix = tag + "_" + std::to_string(t);
      lp.add_row("src_" + suffix, src, Relation::kEqual, 0.0);
      lp.add_row("snk_" + suffix, snk, Relation::kEqual, 0.0);
      for (const auto& [v, terms] : balance) {
        lp.add_row("cons_" + suffix + "_" + net.nodes()[v], terms, Relation::kEqual, 0.0);
      }
    }
  }
  for (int t = 1; t <= P; ++t) {
    std::vector<std::vector<std::pair<int, double>>> load(net.edge_count());
    for (int k = 0; k < instance.flow_count(); ++k) {
      for (const auto& [e, col] : xe[k][t]) load[e].emplace_back(col, instance.flow(k).demand);
    }
    for (int e = 0; e < net.edge_count(); ++e) {
      if (load[e].empty()) continue;
      lp.add_row("cap_" + net.edge(e).id + "_" + std::to_string(t), load[e],
                 Relation::kLessEqual, periods[t - 1].length * net.edge(e).capacity);
    }
  }
  return std::move(lp).build();
}

}  // namespace

int horizon_upper_bound(const Instance& instance) {
  const Network& net = instance.network();
  int total = 0;
  for (int k = 0; k < instance.flow_count(); ++k) {
    const Flow& f = instance.flow(k);
    const double bottleneck = instance.model() == RoutingModel::kSinglePath
                                  ? path_bottleneck(net, f.path)
                                  : max_flow_value(net, f.source, f.sink);
    if (!(bottleneck > 0.0)) {
      const FlowRef ref = instance.ref(k);
      throw FormulationError("unroutable flow: coflow " + std::to_string(ref.coflow) +
                             " flow " + std::to_string(ref.flow));
    }
    total += std::max(1, guarded_ceil(f.demand / bottleneck));
  }
  return instance.max_release() + total;
}

IntervalGrid geometric_intervals(int horizon, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  IntervalGrid grid;
  grid.epsilon = epsilon;
  const int count = 1 + geometric_exponent(horizon, epsilon);
  grid.boundaries.reserve(count + 1);
  grid.boundaries.push_back(0.0);
  for (int k = 1; k <= count; ++k) grid.boundaries.push_back(std::pow(1.0 + epsilon, k - 1));
  return grid;
}

int interval_horizon(const Instance& instance, int horizon, double epsilon) {
  const int r = instance.max_release();
  double first = 0.0;
  if (r > 0) first = std::pow(1.0 + epsilon, geometric_exponent(r, epsilon));
  return guarded_ceil(first) + (horizon - r);
}

std::string flow_column(int j, int i, int t) {
  return "x_" + std::to_string(j) + "_" + std::to_string(i) + "_" + std::to_string(t);
}

std::string edge_column(int j, int i, int t, const std::string& edge_id) {
  return "xe_" + std::to_string(j) + "_" + std::to_string(i) + "_" + std::to_string(t) +
         "_" + edge_id;
}

std::string cumulative_column(int j, int t) {
  return "X_" + std::to_string(j) + "_" + std::to_string(t);
}

std::string completion_column(int j) { return "C_" + std::to_string(j); }

LPProblem build_time_indexed_lp(const Instance& instance, int horizon) {
  if (horizon <= instance.max_release()) {
    throw FormulationError("horizon " + std::to_string(horizon) +
                           " does not exceed the latest release");
  }
  std::vector<Period> periods;
  for (int t = 1; t <= horizon; ++t) periods.push_back({1.0, t - 1.0});
  // Slot t is usable iff t > release.
  return assemble(instance, periods, horizon + 1.0,
                  [](const Flow& f, int t) { return t > f.release; });
}

LPProblem build_interval_lp(const Instance& instance, const IntervalGrid& grid) {
  if (grid.interval_count() < 1) throw FormulationError("empty interval grid");
  if (grid.boundaries[grid.interval_count() - 1] < instance.max_release()) {
    throw FormulationError("interval grid ends before the latest release");
  }
  std::vector<Period> periods;
  for (int k = 1; k <= grid.interval_count(); ++k) {
    periods.push_back({grid.length(k), grid.boundaries[k - 1]});
  }
  return assemble(instance, periods, grid.end() + 1.0, [&](const Flow& f, int k) {
    return grid.boundaries[k - 1] >= f.release;
  });
}

FractionalSchedule extract_fractional(const LPProblem& problem, const LPSolution& solution,
                                      const Instance& instance, int periods) {
  const Network& net = instance.network();
  const bool free_path = instance.model() == RoutingModel::kFreePath;
  FractionalSchedule s;
  s.slot_count = periods;
  s.flow_fraction = Eigen::MatrixXd::Zero(instance.flow_count(), periods);
  if (free_path) {
    s.edge_fraction.assign(instance.flow_count(),
                           Eigen::MatrixXd::Zero(net.edge_count(), periods));
  }
  auto value = [&](const std::string& name) {
    const auto col = problem.column(name);
    if (!col) throw FormulationError("solution lacks column " + name);
    return solution.primal[*col];
  };
  constexpr double kNoise = 1e-10;
  for (int k = 0; k < instance.flow_count(); ++k) {
    const FlowRef ref = instance.ref(k);
    for (int t = 1; t <= periods; ++t) {
      double v = value(flow_column(ref.coflow, ref.flow, t));
      if (v < kNoise) continue;
      s.flow_fraction(k, t - 1) = v;
      if (!free_path) continue;
      for (int e = 0; e < net.edge_count(); ++e) {
        const auto col = problem.column(edge_column(ref.coflow, ref.flow, t, net.edge(e).id));
        if (!col) continue;
        const double ve = solution.primal[*col];
        if (ve > 1e-13) s.edge_fraction[k](e, t - 1) = ve;
      }
    }
    const double sum = s.flow_fraction.row(k).sum();
    if (sum > 0.0) {
      s.flow_fraction.row(k) /= sum;
      if (free_path) s.edge_fraction[k] /= sum;
    }
  }
  s.coflow_cumulative = coflow_cumulative(s.flow_fraction, instance);
  s.completion.resize(instance.coflow_count());
  for (int j = 0; j < instance.coflow_count(); ++j) s.completion[j] = value(completion_column(j));
  return s;
}

}  // namespace coflow
