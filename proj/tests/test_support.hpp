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

#include <vector>

#include "coflow/model.hpp"

namespace coflow::testing {

// Two nodes a -> b joined by edge "e" of the given capacity, carrying one
// coflow with one flow.
inline Instance single_edge_instance(double demand = 1.0, double capacity = 1.0,
                                     int release = 0,
                                     RoutingModel model = RoutingModel::kSinglePath) {
  Network net({"a", "b"}, {{"e", 0, 1, capacity}});
  Flow f{0, 1, demand, release, {}};
  if (model == RoutingModel::kSinglePath) f.path = {0};
  return Instance(std::move(net), {{{f}, 1.0}}, model);
}

// Fractional schedule of the single-edge instance with the given per-slot
// fractions. C is set to sum_t t x(t).
inline FractionalSchedule single_flow_fractional(const Instance& instance,
                                                 const std::vector<double>& x) {
  FractionalSchedule s;
  s.slot_count = static_cast<int>(x.size());
  s.flow_fraction = Eigen::Map<const Eigen::RowVectorXd>(x.data(), x.size());
  s.coflow_cumulative = coflow_cumulative(s.flow_fraction, instance);
  s.completion = Eigen::VectorXd::Zero(1);
  for (size_t t = 0; t < x.size(); ++t) s.completion[0] += (t + 1.0) * x[t];
  return s;
}

inline RateSchedule single_flow_schedule(const std::vector<double>& amounts) {
  RateSchedule s;
  s.slot_count = static_cast<int>(amounts.size());
  s.amount = Eigen::Map<const Eigen::RowVectorXd>(amounts.data(), amounts.size());
  return s;
}

}  // namespace coflow::testing
