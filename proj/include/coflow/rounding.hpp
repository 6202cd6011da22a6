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

#include <cstdint>
#include <span>
#include <vector>

#include "coflow/formulation.hpp"
#include "coflow/model.hpp"

namespace coflow {

/// Stretch factor in (0, 1]; the schedule is slowed down by 1/value.
class Lambda {
 public:
  explicit Lambda(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Inverse-CDF draw from the density 2v on (0, 1]: returns sqrt(u).
/// Throws std::invalid_argument for u outside (0, 1].
Lambda sample_lambda(double u);

/// Uniform draw in (0, 1] from substream `stream` of `seed`.
double uniform_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Replays the fractional schedule with time dilated by 1/lambda at the
/// original rates: stretched slot s receives x(t) * |[s-1, s] ∩ [(t-1)/lambda,
/// t/lambda]| from every LP slot t. Each flow is cut off, slot by slot, once
/// its cumulative amount reaches one; the cut slot is scaled as a whole
/// (edge amounts included). The result spans ceil(T / lambda) slots.
/// Throws std::invalid_argument when lambda < 1 / (10 T).
RateSchedule stretch_schedule(const FractionalSchedule& fractional, Lambda lambda);

/// Scans slots in ascending order and moves each nonempty slot's entire
/// content to the earliest idle slot t' before it such that every flow in
/// the slot has release < t'.
RateSchedule compact_idle_slots(const RateSchedule& schedule, const Instance& instance);

/// Spreads each interval's fractions uniformly over the time the interval
/// covers and cuts the result into unit slots (boundary slots pro-rated).
/// `interval_solution` has one period per grid interval.
FractionalSchedule expand_interval_fractional(const FractionalSchedule& interval_solution,
                                              const IntervalGrid& grid,
                                              const Instance& instance);
RateSchedule expand_interval_schedule(const FractionalSchedule& interval_solution,
                                      const IntervalGrid& grid, const Instance& instance);

/// Earliest continuous time by which the fractional schedule has sent a
/// `fraction` share of every flow of `coflow`, with each flow sent at a
/// uniform rate inside a slot.
double lambda_point(const FractionalSchedule& fractional, const Instance& instance,
                    int coflow, double fraction);

/// ceil(lambda_point / lambda): the slot by which stretching with `lambda`
/// must complete the coflow.
int stretch_completion_bound(const FractionalSchedule& fractional,
                             const Instance& instance, int coflow, Lambda lambda);

struct StretchTrial {
  Lambda lambda{1.0};
  RateSchedule stretched;           // before compaction
  CompletionReport stretched_report;
  RateSchedule schedule;            // after compaction
  CompletionReport report;
};

struct StretchRun {
  StretchTrial best;
  double average_objective = 0.0;
  std::vector<StretchTrial> trials;  // in trial order
};

StretchTrial stretch_trial(const Instance& instance, const FractionalSchedule& fractional,
                           Lambda lambda);

/// Trial i draws lambda from substream i of `seed`; draws below the
/// 1 / (10 T) guard are redrawn from the same substream. Ties for the best
/// objective go to the earliest trial.
StretchRun run_stretch(const Instance& instance, const FractionalSchedule& fractional,
                       int trials, std::uint64_t seed);
StretchRun run_stretch(const Instance& instance, const FractionalSchedule& fractional,
                       std::span<const Lambda> lambdas);

/// The LP schedule itself (lambda = 1), compacted.
StretchTrial lp_heuristic(const Instance& instance, const FractionalSchedule& fractional);

}  // namespace coflow
