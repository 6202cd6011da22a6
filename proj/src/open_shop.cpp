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

#include "coflow/open_shop.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "coflow/io.hpp"

namespace coflow {

std::vector<std::string> validate_open_shop(const OpenShopInstance& shop) {
  std::vector<std::string> errors;
  if (shop.machines < 1) errors.push_back("machine count must be positive");
  for (size_t j = 0; j < shop.jobs.size(); ++j) {
    const OpenShopJob& job = shop.jobs[j];
    const std::string name = "job " + std::to_string(j);
    if (!(job.weight > 0.0)) errors.push_back(name + ": weight not positive");
    if (static_cast<int>(job.p.size()) != shop.machines) {
      errors.push_back(name + ": expected one processing time per machine");
      continue;
    }
    for (double p : job.p) {
      if (!(p >= 0.0)) errors.push_back(name + ": negative processing time");
    }
    if (std::all_of(job.p.begin(), job.p.end(), [](double p) { return p == 0.0; })) {
      errors.push_back(name + ": no work on any machine");
    }
  }
  return errors;
}

Instance reduce_open_shop(const OpenShopInstance& shop, RoutingModel model) {
  if (const auto errors = validate_open_shop(shop); !errors.empty()) {
    throw std::invalid_argument("invalid open shop: " + errors.front());
  }
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  for (int i = 0; i < shop.machines; ++i) {
    nodes.push_back("x" + std::to_string(i + 1));
    nodes.push_back("y" + std::to_string(i + 1));
    edges.push_back({"m" + std::to_string(i + 1), 2 * i, 2 * i + 1, 1.0});
  }
  std::vector<Coflow> coflows;
  for (const OpenShopJob& job : shop.jobs) {
    Coflow c;
    c.weight = job.weight;
    for (int i = 0; i < shop.machines; ++i) {
      if (job.p[i] == 0.0) continue;
      Flow f;
      f.source = 2 * i;
      f.sink = 2 * i + 1;
      f.demand = job.p[i];
      f.path = {i};
      c.flows.push_back(std::move(f));
    }
    coflows.push_back(std::move(c));
  }
  return Instance(Network(std::move(nodes), std::move(edges)), std::move(coflows), model);
}

std::vector<double> permutation_completion(const OpenShopInstance& shop,
                                           const std::vector<int>& order) {
  std::vector<double> completion(shop.jobs.size(), 0.0);
  std::vector<double> clock(shop.machines, 0.0);
  for (int j : order) {
    for (int i = 0; i < shop.machines; ++i) {
      const double p = shop.jobs[j].p[i];
      if (p == 0.0) continue;
      clock[i] += p;
      completion[j] = std::max(completion[j], clock[i]);
    }
  }
  return completion;
}

OpenShopOptimum open_shop_optimal(const OpenShopInstance& shop, int max_jobs) {
  const int n = static_cast<int>(shop.jobs.size());
  if (n > max_jobs) {
    throw std::invalid_argument("open shop has " + std::to_string(n) +
                                " jobs, enumeration limit is " + std::to_string(max_jobs));
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  OpenShopOptimum best;
  best.objective = std::numeric_limits<double>::infinity();
  do {
    const std::vector<double> c = permutation_completion(shop, order);
    double value = 0.0;
    for (int j = 0; j < n; ++j) value += shop.jobs[j].weight * c[j];
    if (value < best.objective) {
      best.objective = value;
      best.order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

RateSchedule replay_permutation(const OpenShopInstance& shop, const std::vector<int>& order,
                                const Instance& reduced) {
  // Each machine works through its queue at unit rate; slot s covers (s-1, s].
  std::vector<std::vector<std::pair<double, double>>> spans(reduced.flow_count());
  std::vector<double> clock(shop.machines, 0.0);
  for (int j : order) {
    int flow = 0;
    for (int i = 0; i < shop.machines; ++i) {
      const double p = shop.jobs[j].p[i];
      if (p == 0.0) continue;
      spans[reduced.flat_index(j, flow++)].push_back({clock[i], clock[i] + p});
      clock[i] += p;
    }
  }
  const double end = clock.empty() ? 0.0 : *std::max_element(clock.begin(), clock.end());
  RateSchedule out;
  out.slot_count = static_cast<int>(std::ceil(end - 1e-9));
  out.amount = Eigen::MatrixXd::Zero(reduced.flow_count(), out.slot_count);
  for (int k = 0; k < reduced.flow_count(); ++k) {
    const double demand = reduced.flow(k).demand;
    for (const auto& [a, b] : spans[k]) {
      for (int s = static_cast<int>(std::floor(a)) + 1; s <= out.slot_count && s - 1 < b; ++s) {
        const double overlap = std::min<double>(b, s) - std::max<double>(a, s - 1);
        if (overlap > 0.0) out.amount(k, s - 1) += overlap / demand;
      }
    }
  }
  return out;
}

OpenShopInstance open_shop_from_json(const nlohmann::json& doc) {
  try {
    OpenShopInstance shop;
    shop.machines = doc.at("machines").get<int>();
    for (const auto& job : doc.at("jobs")) {
      shop.jobs.push_back({job.value("weight", 1.0), job.at("p").get<std::vector<double>>()});
    }
    return shop;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed open shop: ") + e.what());
  }
}

nlohmann::json open_shop_to_json(const OpenShopInstance& shop) {
  nlohmann::json jobs = nlohmann::json::array();
  for (const OpenShopJob& job : shop.jobs) jobs.push_back({{"weight", job.weight}, {"p", job.p}});
  return {{"machines", shop.machines}, {"jobs", jobs}};
}

}  // namespace coflow
