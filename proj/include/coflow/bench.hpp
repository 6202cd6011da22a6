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
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "coflow/model.hpp"
#include "coflow/open_shop.hpp"
#include "coflow/pipeline.hpp"

namespace coflow {

// Topology presets:
//   swan-like    5 nodes, 7 links (ring plus two chords)
//   gscale-like  12 nodes, 19 links (ring plus seven chords)
//   ring         `ring_nodes` nodes in a cycle
//   random       `random_nodes` nodes, `random_links` links, redrawn until connected
//   open-shop    reduced concurrent open shop with `machines` machines
// Every link is bidirected: one directed edge each way with the same capacity.
struct BenchConfig {
  std::string topology = "swan-like";
  RoutingModel model = RoutingModel::kSinglePath;
  int jobs = 8;
  int max_flows = 3;
  double demand_min = 1.0;
  double demand_max = 4.0;
  double weight_min = 1.0;
  double weight_max = 100.0;
  double release_mean = 0.0;  // mean inter-arrival time in slots; 0 releases all at 0
  double slot_length = 1.0;
  double link_capacity = 1.0;  // per unit time; per-slot capacity is this times slot_length
  int ring_nodes = 6;
  int random_nodes = 8;
  int random_links = 12;
  int machines = 3;
  int max_processing = 5;
  int instances = 1;
  std::vector<Strategy> strategies{Strategy::kHeuristic, Strategy::kStretch};
  std::vector<double> epsilons{0.5436};
  int trials = 20;
  std::uint64_t seed = 1;
  int workers = 0;  // 0 uses the hardware concurrency
};

std::vector<std::string> validate_bench_config(const BenchConfig& config);

/// Reads the keys of BenchConfig from a JSON object; absent keys keep their
/// defaults. Strategies and models use their command-line spellings.
/// Throws IoError on unknown keys or bad values.
BenchConfig bench_config_from_json(const nlohmann::json& doc);

double draw_weight(std::mt19937_64& rng, double low, double high);

Network preset_network(const BenchConfig& config, std::mt19937_64& rng);

/// Deterministic in (config, seed).
Instance generate_instance(const BenchConfig& config, std::uint64_t seed);
OpenShopInstance generate_open_shop(const BenchConfig& config, std::uint64_t seed);

struct BenchCase {
  Instance instance;
  std::uint64_t seed = 0;
};

/// `config.instances` generated cases with seeds seed, seed + 1, ...
std::vector<BenchCase> generate_cases(const BenchConfig& config);

struct BenchRow {
  std::uint64_t seed = 0;
  RoutingModel model = RoutingModel::kSinglePath;
  Strategy strategy = Strategy::kStretch;
  std::optional<double> epsilon;  // interval strategy only
  double lp_objective = 0.0;
  double schedule_objective = 0.0;
  double ratio = 0.0;
  double wall_ms = 0.0;
  std::string error;  // empty when the row succeeded
};

/// One row per (case, strategy, epsilon); epsilon only varies the interval
/// strategy. Rows run on a worker pool and come back in row order. A failing
/// row records its error and carries NaN objectives.
std::vector<BenchRow> run_bench(const std::vector<BenchCase>& cases, const BenchConfig& config,
                                const SolverChoice& solver = {});

inline constexpr const char* kBenchCsvHeader =
    "seed,model,strategy,epsilon,lp_objective,schedule_objective,ratio,wall_ms";

std::string to_csv_line(const BenchRow& row);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace coflow
