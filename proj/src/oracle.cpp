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

#include "coflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace coflow {

std::string ScheduleViolation::describe(const Instance& instance) const {
  std::ostringstream os;
  os << kind;
  if (slot > 0) os << " at slot " << slot;
  if (flow >= 0) {
    const FlowRef ref = instance.ref(flow);
    os << " for coflow " << ref.coflow << " flow " << ref.flow;
  }
  if (edge >= 0) os << " on edge " << instance.network().edge(edge).id;
  os << " (magnitude " << magnitude << ")";
  return os.str();
}

std::vector<ScheduleViolation> verify_schedule(const RateSchedule& schedule,
                                               const Instance& instance) {
  constexpr double tol = kFeasibilityTolerance;
  std::vector<ScheduleViolation> out;
  const Network& net = instance.network();
  const int F = instance.flow_count();
  const int E = net.edge_count();
  const int S = schedule.slot_count;
  if (schedule.amount.rows() != F || schedule.amount.cols() != S) {
    out.push_back({"schedule shape mismatch", 0, -1, -1, 0.0});
    return out;
  }
  const bool free_path = instance.model() == RoutingModel::kFreePath;
  if (free_path) {
    bool shape_ok = static_cast<int>(schedule.edge_amount.size()) == F;
    for (const auto& m : schedule.edge_amount) shape_ok = shape_ok && m.rows() == E && m.cols() == S;
    if (!shape_ok) {
      out.push_back({"edge breakdown missing or misshapen", 0, -1, -1, 0.0});
      return out;
    }
  } else if (!schedule.edge_amount.empty()) {
    // A single-path schedule may carry a breakdown, but only along the path.
    for (int k = 0; k < F && k < static_cast<int>(schedule.edge_amount.size()); ++k) {
      const auto& m = schedule.edge_amount[k];
      const auto& path = instance.flow(k).path;
      for (int e = 0; e < m.rows(); ++e) {
        const bool on_path = std::find(path.begin(), path.end(), e) != path.end();
        for (int t = 0; t < m.cols(); ++t) {
          const double expect = on_path && t < S ? schedule.amount(k, t) : 0.0;
          if (std::abs(m(e, t) - expect) > tol) {
            out.push_back({"transmission off the declared path", t + 1, k, e, m(e, t) - expect});
          }
        }
      }
    }
  }

  for (int k = 0; k < F; ++k) {
    const Flow& f = instance.flow(k);
    double sent = 0.0;
    bool overshoot_reported = false;
    for (int t = 1; t <= S; ++t) {
      const double a = schedule.amount(k, t - 1);
      if (a < -tol) out.push_back({"negative amount", t, k, -1, a});
      if (a > tol && t <= f.release) out.push_back({"transmission before release", t, k, -1, a});
      sent += a;
      if (sent > 1.0 + tol && !overshoot_reported) {
        out.push_back({"cumulative exceeds demand", t, k, -1, sent - 1.0});
        overshoot_reported = true;
      }
    }
    if (sent < 1.0 - tol) out.push_back({"flow not completed", 0, k, -1, 1.0 - sent});
  }

  Eigen::MatrixXd load = Eigen::MatrixXd::Zero(E, S);
  for (int k = 0; k < F; ++k) {
    const Flow& f = instance.flow(k);
    if (free_path) {
      load += f.demand * schedule.edge_amount[k];
    } else {
      for (int e : f.path) load.row(e) += f.demand * schedule.amount.row(k);
    }
  }
  for (int t = 1; t <= S; ++t) {
    for (int e = 0; e < E; ++e) {
      const double excess = load(e, t - 1) - net.edge(e).capacity;
      if (excess > tol) out.push_back({"capacity exceeded", t, -1, e, excess});
    }
  }

  if (free_path) {
    for (int k = 0; k < F; ++k) {
      const Flow& f = instance.flow(k);
      const Eigen::MatrixXd& m = schedule.edge_amount[k];
      for (int t = 1; t <= S; ++t) {
        std::vector<double> net_out(net.node_count(), 0.0);
        for (int e = 0; e < E; ++e) {
          const double v = m(e, t - 1);
          if (v == 0.0) continue;
          if (v < -tol) out.push_back({"negative edge amount", t, k, e, v});
          net_out[net.edge(e).src] += v;
          net_out[net.edge(e).dst] -= v;
        }
        const double a = schedule.amount(k, t - 1);
        for (int v = 0; v < net.node_count(); ++v) {
          const double want = v == f.source ? a : (v == f.sink ? -a : 0.0);
          const double residual = net_out[v] - want;
          if (std::abs(residual) > tol) {
            const char* kind = v == f.source ? "source balance violated"
                               : v == f.sink ? "sink balance violated"
                                             : "conservation violated";
            out.push_back({kind, t, k, -1, residual});
          }
        }
      }
    }
  }
  return out;
}

double prefix_sum_identity_residual(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::Index T = x.size();
  double weighted = 0.0;
  for (Eigen::Index t = 0; t < T; ++t) weighted += static_cast<double>(t + 1) * x[t];
  double bound = 1.0;
  double prefix = 0.0;
  for (Eigen::Index t = 0; t + 1 < T; ++t) {
    prefix += x[t];
    bound += 1.0 - prefix;
  }
  return std::abs(weighted - bound);
}

double first_time_reaching(const Eigen::Ref<const Eigen::VectorXd>& cumulative, double level) {
  // cumulative[t-1] = X(t); X(0) = 0. Bisection on the monotone interpolant.
  const int T = static_cast<int>(cumulative.size());
  auto value_at = [&](double tau) {
    if (tau <= 0.0) return 0.0;
    if (tau >= T) return cumulative[T - 1];
    const int lo = static_cast<int>(std::floor(tau));
    const double x0 = lo == 0 ? 0.0 : cumulative[lo - 1];
    const double x1 = cumulative[lo];
    return x0 + (tau - lo) * (x1 - x0);
  };
  double lo = 0.0;
  double hi = T;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (value_at(mid) >= level) hi = mid;
    else lo = mid;
  }
  return hi;
}

std::vector<CoflowIntegralCheck> continuous_interpolation_checks(
    const FractionalSchedule& fractional) {
  const Eigen::MatrixXd& X = fractional.coflow_cumulative;
  const int T = fractional.slot_count;
  std::vector<CoflowIntegralCheck> out(X.rows());
  // 3-point Gauss-Legendre nodes and weights on [-1, 1].
  const double nodes[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  const double weights[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

  for (Eigen::Index j = 0; j < X.rows(); ++j) {
    CoflowIntegralCheck& c = out[j];
    const Eigen::VectorXd cum = X.row(j).transpose();
    double prev = 0.0;
    for (int t = 1; t <= T; ++t) {
      c.integral += 1.0 - 0.5 * (prev + cum[t - 1]);
      prev = cum[t - 1];
    }
    c.discrete_bound = 1.0;
    for (int t = 1; t < T; ++t) c.discrete_bound += 1.0 - cum[t - 1];
    c.identity_residual = std::abs(c.integral - (c.discrete_bound - 0.5));
    if (j < fractional.completion.size()) {
      c.lemma_slack = (fractional.completion[j] - 0.5) - c.integral;
    }

    // The inverse of X is linear between consecutive distinct levels.
    std::vector<double> levels{0.0, 1.0};
    for (int t = 0; t < T; ++t) levels.push_back(std::clamp(cum[t], 0.0, 1.0));
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    double total = 0.0;
    for (size_t s = 1; s < levels.size(); ++s) {
      const double a = levels[s - 1];
      const double b = levels[s];
      if (b - a <= 0.0) continue;
      double piece = 0.0;
      for (int q = 0; q < 3; ++q) {
        const double lam = 0.5 * (a + b) + 0.5 * (b - a) * nodes[q];
        piece += weights[q] * first_time_reaching(cum, lam);
      }
      total += 0.5 * (b - a) * piece;
    }
    c.lambda_integral = total;
    c.counting_residual = std::abs(c.lambda_integral - c.integral);
  }
  return out;
}

std::optional<std::string> check_lp_lower_bound(double lp_objective, double exact_objective) {
  const double slack = 1e-6 * std::max(1.0, std::abs(exact_objective));
  if (lp_objective <= exact_objective + slack) return std::nullopt;
  std::ostringstream os;
  os << "LP objective " << lp_objective << " exceeds the exact optimum " << exact_objective;
  return os.str();
}

}  // namespace coflow
