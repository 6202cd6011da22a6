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

#include "json.hpp"

#include "coflow/model.hpp"

namespace coflow {

struct OpenShopJob {
  double weight = 1.0;
  std::vector<double> p;  // processing time per machine
};

/// Concurrent open shop: a job is done once every machine has finished its
/// part. All releases are zero.
struct OpenShopInstance {
  int machines = 0;
  std::vector<OpenShopJob> jobs;
};

std::vector<std::string> validate_open_shop(const OpenShopInstance& shop);

/// One unit-capacity edge x_i -> y_i per machine and one coflow per job with
/// a flow of demand p on machine i's edge for every positive p. Throws
/// std::invalid_argument for an invalid shop or a job with no work.
Instance reduce_open_shop(const OpenShopInstance& shop,
                          RoutingModel model = RoutingModel::kSinglePath);

/// Completion of each job when every machine runs the jobs back to back in
/// `order`. Machines a job does not use do not delay it.
std::vector<double> permutation_completion(const OpenShopInstance& shop,
                                           const std::vector<int>& order);

struct OpenShopOptimum {
  double objective = 0.0;
  std::vector<int> order;  // job indices, first processed first
};

/// Minimum weighted completion over all job orders. Throws
/// std::invalid_argument when the shop has more than `max_jobs` jobs.
OpenShopOptimum open_shop_optimal(const OpenShopInstance& shop, int max_jobs = 8);

/// The permutation schedule of `order` expressed on the reduced instance.
RateSchedule replay_permutation(const OpenShopInstance& shop,
                                const std::vector<int>& order,
                                const Instance& reduced);

// {"machines": M, "jobs": [{"weight": w, "p": [p_1, ..., p_M]}, ...]}
OpenShopInstance open_shop_from_json(const nlohmann::json& doc);
nlohmann::json open_shop_to_json(const OpenShopInstance& shop);

}  // namespace coflow
