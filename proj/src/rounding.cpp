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

#include "coflow/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace coflow {

namespace {

// A flow counts as complete once its cumulative amount is within this of 1.
constexpr double kDoneTolerance = 1e-11;
// Overlaps shorter than this are floating-point residue at slot boundaries.
constexpr double kMinOverlap = 1e-12;

int guarded_ceil(double v) {
  return static_cast<int>(std::ceil(v - 1e-9 * std::max(1.0, std::abs(v))));
}

}  // namespace

Lambda::Lambda(double value) : value_(value) {
  if (!(value > 0.0 && value <= 1.0)) throw std::invalid_argument("lambda must lie in (0, 1]");
}

Lambda sample_lambda(double u) {
  if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("u must lie in (0, 1]");
  return Lambda(std::sqrt(u));
}

double uniform_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  rng.discard(index);
  // 53 random mantissa bits mapped onto (0, 1].
  return 1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

RateSchedule stretch_schedule(const FractionalSchedule& fractional, Lambda lambda) {
  const double lam = lambda.value();
  const int T = fractional.slot_count;
  if (lam < 1.0 / (10.0 * std::max(T, 1))) {
    throw std::invalid_argument("lambda below the 1/(10T) memory guard");
  }
  const int S = std::max(guarded_ceil(T / lam), 0);
  const Eigen::Index flows = fractional.flow_fraction.rows();
  const bool has_edges = !fractional.edge_fraction.empty();

  RateSchedule raw;
  raw.slot_count = S;
  raw.amount = Eigen::MatrixXd::Zero(flows, S);
  if (has_edges) {
    raw.edge_amount.resize(flows);
    for (Eigen::Index k = 0; k < flows; ++k) {
      raw.edge_amount[k] = Eigen::MatrixXd::Zero(fractional.edge_fraction[k].rows(), S);
    }
  }

  for (int t = 1; t <= T; ++t) {
    const double a = (t - 1) / lam;
    const double b = t / lam;
    const int first = static_cast<int>(std::floor(a)) + 1;
    const int last = std::min(S, static_cast<int>(std::ceil(b)));
    for (int s = first; s <= last; ++s) {
      const double overlap = std::min<double>(b, s) - std::max<double>(a, s - 1);
      if (overlap < kMinOverlap) continue;
      raw.amount.col(s - 1) += overlap * fractional.flow_fraction.col(t - 1);
      if (has_edges) {
        for (Eigen::Index k = 0; k < flows; ++k) {
          if (fractional.flow_fraction(k, t - 1) == 0.0) continue;
          raw.edge_amount[k].col(s - 1) += overlap * fractional.edge_fraction[k].col(t - 1);
        }
      }
    }
  }

  // Truncate each flow once its demand is met.
  for (Eigen::Index k = 0; k < flows; ++k) {
    double sent = 0.0;
    for (int s = 0; s < S; ++s) {
      const double r = raw.amount(k, s);
      if (r == 0.0) continue;
      double factor = 1.0;
      if (sent >= 1.0 - kDoneTolerance) {
        factor = 0.0;
      } else if (sent + r >= 1.0 - kDoneTolerance) {
        factor = std::min(1.0, (1.0 - sent) / r);
      }
      raw.amount(k, s) = factor == 1.0 ? r : (factor == 0.0 ? 0.0 : 1.0 - sent);
      sent += raw.amount(k, s);
      if (has_edges && factor != 1.0) raw.edge_amount[k].col(s) *= factor;
    }
  }
  return raw;
}

RateSchedule compact_idle_slots(const RateSchedule& schedule, const Instance& instance) {
  RateSchedule out = schedule;
  const int S = out.slot_count;
  const bool has_edges = !out.edge_amount.empty();
  std::vector<bool> busy(S + 1, false);
  for (int t = 1; t <= S; ++t) busy[t] = (out.amount.col(t - 1).array() > 0.0).any();

  for (int t = 2; t <= S; ++t) {
    if (!busy[t]) continue;
    int latest_release = 0;
    for (int k = 0; k < instance.flow_count(); ++k) {
      if (out.amount(k, t - 1) > 0.0) latest_release = std::max(latest_release, instance.flow(k).release);
    }
    // Every flow in the slot needs release < t'.
    int target = -1;
    for (int cand = latest_release + 1; cand < t; ++cand) {
      if (!busy[cand]) {
        target = cand;
        break;
      }
    }
    if (target < 0) continue;
    out.amount.col(target - 1) = out.amount.col(t - 1);
    out.amount.col(t - 1).setZero();
    if (has_edges) {
      for (Eigen::MatrixXd& m : out.edge_amount) {
        m.col(target - 1) = m.col(t - 1);
        m.col(t - 1).setZero();
      }
    }
    busy[target] = true;
    busy[t] = false;
  }
  return out;
}

FractionalSchedule expand_interval_fractional(const FractionalSchedule& interval_solution,
                                              const IntervalGrid& grid,
                                              const Instance& instance) {
  const int K = grid.interval_count();
  if (interval_solution.slot_count != K) {
    throw std::invalid_argument("interval solution does not match the grid");
  }
  const int S = guarded_ceil(grid.end());
  const Eigen::Index flows = interval_solution.flow_fraction.rows();
  const bool has_edges = !interval_solution.edge_fraction.empty();
  FractionalSchedule out;
  out.slot_count = S;
  out.flow_fraction = Eigen::MatrixXd::Zero(flows, S);
  if (has_edges) {
    out.edge_fraction.resize(flows);
    for (Eigen::Index k = 0; k < flows; ++k) {
      out.edge_fraction[k] = Eigen::MatrixXd::Zero(interval_solution.edge_fraction[k].rows(), S);
    }
  }
  for (int k = 1; k <= K; ++k) {
    const double a = grid.boundaries[k - 1];
    const double b = grid.boundaries[k];
    const double length = b - a;
    const int first = static_cast<int>(std::floor(a)) + 1;
    const int last = std::min(S, static_cast<int>(std::ceil(b)));
    for (int s = first; s <= last; ++s) {
      const double share = (std::min<double>(b, s) - std::max<double>(a, s - 1)) / length;
      if (share * length < kMinOverlap) continue;
      out.flow_fraction.col(s - 1) += share * interval_solution.flow_fraction.col(k - 1);
      if (has_edges) {
        for (Eigen::Index f = 0; f < flows; ++f) {
          out.edge_fraction[f].col(s - 1) += share * interval_solution.edge_fraction[f].col(k - 1);
        }
      }
    }
  }
  out.coflow_cumulative = coflow_cumulative(out.flow_fraction, instance);
  out.completion = interval_solution.completion;
  return out;
}

RateSchedule expand_interval_schedule(const FractionalSchedule& interval_solution,
                                      const IntervalGrid& grid, const Instance& instance) {
  return to_rate_schedule(expand_interval_fractional(interval_solution, grid, instance));
}

double lambda_point(const FractionalSchedule& fractional, const Instance& instance,
                    int coflow, double fraction) {
  const int first = instance.first_flow(coflow);
  const int size = static_cast<int>(instance.coflows()[coflow].flows.size());
  double point = 0.0;
  for (int k = first; k < first + size; ++k) {
    double before = 0.0;
    double at = fractional.slot_count;
    for (int t = 1; t <= fractional.slot_count; ++t) {
      const double x = fractional.flow_fraction(k, t - 1);
      if (before + x >= fraction - 1e-12) {
        const double part = x > 0.0 ? std::clamp((fraction - before) / x, 0.0, 1.0) : 0.0;
        at = (t - 1) + part;
        break;
      }
      before += x;
    }
    point = std::max(point, at);
  }
  return point;
}

int stretch_completion_bound(const FractionalSchedule& fractional, const Instance& instance,
                             int coflow, Lambda lambda) {
  return guarded_ceil(lambda_point(fractional, instance, coflow, lambda.value()) /
                      lambda.value());
}

StretchTrial stretch_trial(const Instance& instance, const FractionalSchedule& fractional,
                           Lambda lambda) {
  StretchTrial trial;
  trial.lambda = lambda;
  trial.stretched = stretch_schedule(fractional, lambda);
  trial.stretched_report = completion_times(trial.stretched, instance);
  trial.schedule = compact_idle_slots(trial.stretched, instance);
  trial.report = completion_times(trial.schedule, instance);
  return trial;
}

StretchRun run_stretch(const Instance& instance, const FractionalSchedule& fractional,
                       std::span<const Lambda> lambdas) {
  if (lambdas.empty()) throw std::invalid_argument("at least one trial is required");
  StretchRun run;
  run.trials.reserve(lambdas.size());
  double total = 0.0;
  size_t best = 0;
  for (size_t i = 0; i < lambdas.size(); ++i) {
    run.trials.push_back(stretch_trial(instance, fractional, lambdas[i]));
    total += run.trials.back().report.objective;
    if (run.trials[i].report.objective < run.trials[best].report.objective) best = i;
  }
  run.best = run.trials[best];
  run.average_objective = total / static_cast<double>(lambdas.size());
  return run;
}

StretchRun run_stretch(const Instance& instance, const FractionalSchedule& fractional,
                       int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("at least one trial is required");
  const double guard = 1.0 / (10.0 * std::max(fractional.slot_count, 1));
  std::vector<Lambda> lambdas;
  lambdas.reserve(trials);
  for (int i = 0; i < trials; ++i) {
    for (std::uint64_t draw = 0;; ++draw) {
      const Lambda lam = sample_lambda(uniform_draw(seed, static_cast<std::uint64_t>(i), draw));
      if (lam.value() >= guard) {
        lambdas.push_back(lam);
        break;
      }
    }
  }
  return run_stretch(instance, fractional, lambdas);
}

StretchTrial lp_heuristic(const Instance& instance, const FractionalSchedule& fractional) {
  return stretch_trial(instance, fractional, Lambda(1.0));
}

}  // namespace coflow
