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

#include "coflow/model.hpp"

namespace coflow {

// Five-node relay network: s and t joined through relays v1, v2, v3 by
// bidirected unit links. Four unit-weight coflows with one flow each, all
// released at 0, in this order:
//   0: v1 -> t, demand 1      1: v2 -> t, demand 1
//   2: v3 -> t, demand 1      3: s -> t, demand 3
// In the single-path model flows 0-2 use their direct link and flow 3 is
// pinned to s -> v2 -> t, sharing (v2, t) with flow 1.
Instance relay_example(RoutingModel model);

/// Single-path optimum, objective 7: the three short flows in slot 1, then
/// a third of the long flow in each of slots 2-4.
RateSchedule relay_single_path_schedule(const Instance& single_path);

/// Free-path optimum, objective 5: the short flows in slot 1, then the long
/// flow split evenly over the three relays in slot 2.
RateSchedule relay_split_schedule(const Instance& free_path);

}  // namespace coflow
