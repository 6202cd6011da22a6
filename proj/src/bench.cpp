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

#include "coflow/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <thread>

#include "coflow/graph.hpp"
#include "coflow/io.hpp"

namespace coflow {

namespace {

using Link = std::pair<int, int>;

Network bidirected(int nodes, const std::vector<Link>& links, double capacity) {
  std::vector<std::string> names;
  for (int v = 0; v < nodes; ++v) names.push_back("n" + std::to_string(v));
  std::vector<Edge> edges;
  for (const auto& [a, b] : links) {
    edges.push_back({names[a] + "-" + names[b], a, b, capacity});
    edges.push_back({names[b] + "-" + names[a], b, a, capacity});
  }
  return Network(std::move(names), std::move(edges));
}

std::vector<Link> ring_links(int n) {
  std::vector<Link> links;
  for (int v = 0; v < n; ++v) links.push_back({v, (v + 1) % n});
  return links;
}

bool connected(int n, const std::vector<Link>& links) {
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int components = n;
  for (const auto& [a, b] : links) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

std::vector<int> release_slots(const BenchConfig& config, std::mt19937_64& rng) {
  std::vector<int> releases(config.jobs, 0);
  if (config.release_mean <= 0.0) return releases;
  std::exponential_distribution<double> gap(1.0 / config.release_mean);
  double clock = 0.0;
  for (int j = 0; j < config.jobs; ++j) {
    clock += gap(rng);
    releases[j] = static_cast<int>(std::ceil(clock));
  }
  return releases;
}

template <typename T>
void read_key(const nlohmann::json& doc, const char* key, T& target) {
  if (doc.contains(key)) target = doc.at(key).get<T>();
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<std::string> validate_bench_config(const BenchConfig& c) {
  std::vector<std::string> errors;
  static const std::set<std::string> kTopologies{"swan-like", "gscale-like", "ring", "random",
                                                 "open-shop"};
  if (!kTopologies.count(c.topology)) errors.push_back("unknown topology " + c.topology);
  if (c.jobs < 1) errors.push_back("job count must be at least 1");
  if (c.max_flows < 1) errors.push_back("max_flows must be at least 1");
  if (!(c.demand_min > 0.0 && c.demand_max >= c.demand_min)) errors.push_back("bad demand range");
  if (!(c.weight_min > 0.0 && c.weight_max >= c.weight_min)) errors.push_back("bad weight range");
  if (c.release_mean < 0.0) errors.push_back("release_mean must be nonnegative");
  if (!(c.slot_length > 0.0)) errors.push_back("slot_length must be positive");
  if (!(c.link_capacity > 0.0)) errors.push_back("link_capacity must be positive");
  if (c.ring_nodes < 3) errors.push_back("ring_nodes must be at least 3");
  if (c.random_nodes < 2) errors.push_back("random_nodes must be at least 2");
  if (c.random_links < c.random_nodes - 1 ||
      c.random_links > c.random_nodes * (c.random_nodes - 1) / 2) {
    errors.push_back("random_links cannot form a connected simple graph");
  }
  if (c.machines < 1) errors.push_back("machines must be at least 1");
  if (c.max_processing < 1) errors.push_back("max_processing must be at least 1");
  if (c.instances < 0) errors.push_back("instances must be nonnegative");
  if (c.trials < 1) errors.push_back("trials must be at least 1");
  for (double e : c.epsilons) {
    if (!(e > 0.0)) errors.push_back("epsilon values must be positive");
  }
  return errors;
}

BenchConfig bench_config_from_json(const nlohmann::json& doc) {
  static const std::set<std::string> kKeys{
      "topology", "model", "jobs", "max_flows", "demand_min", "demand_max", "weight_min",
      "weight_max", "release_mean", "slot_length", "link_capacity", "ring_nodes",
      "random_nodes", "random_links", "machines", "max_processing", "instances",
      "strategies", "epsilons", "trials", "seed", "workers"};
  if (!doc.is_object()) throw IoError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.count(key)) throw IoError("unknown config key " + key);
  }
  BenchConfig c;
  try {
    read_key(doc, "topology", c.topology);
    if (doc.contains("model")) {
      const auto m = parse_routing_model(doc.at("model").get<std::string>());
      if (!m) throw IoError("unknown model in config");
      c.model = *m;
    }
    read_key(doc, "jobs", c.jobs);
    read_key(doc, "max_flows", c.max_flows);
    read_key(doc, "demand_min", c.demand_min);
    read_key(doc, "demand_max", c.demand_max);
    read_key(doc, "weight_min", c.weight_min);
    read_key(doc, "weight_max", c.weight_max);
    read_key(doc, "release_mean", c.release_mean);
    read_key(doc, "slot_length", c.slot_length);
    read_key(doc, "link_capacity", c.link_capacity);
    read_key(doc, "ring_nodes", c.ring_nodes);
    read_key(doc, "random_nodes", c.random_nodes);
    read_key(doc, "random_links", c.random_links);
    read_key(doc, "machines", c.machines);
    read_key(doc, "max_processing", c.max_processing);
    read_key(doc, "instances", c.instances);
    read_key(doc, "epsilons", c.epsilons);
    read_key(doc, "trials", c.trials);
    read_key(doc, "seed", c.seed);
    read_key(doc, "workers", c.workers);
    if (doc.contains("strategies")) {
      c.strategies.clear();
      for (const auto& s : doc.at("strategies")) {
        const auto parsed = parse_strategy(s.get<std::string>());
        if (!parsed) throw IoError("unknown strategy in config");
        c.strategies.push_back(*parsed);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed config: ") + e.what());
  }
  return c;
}

double draw_weight(std::mt19937_64& rng, double low, double high) {
  return std::uniform_real_distribution<double>(low, high)(rng);
}

Network preset_network(const BenchConfig& config, std::mt19937_64& rng) {
  const double cap = config.link_capacity * config.slot_length;
  if (config.topology == "swan-like") {
    std::vector<Link> links = ring_links(5);
    links.insert(links.end(), {{0, 2}, {1, 3}});
    return bidirected(5, links, cap);
  }
  if (config.topology == "gscale-like") {
    std::vector<Link> links = ring_links(12);
    links.insert(links.end(), {{0, 6}, {1, 4}, {2, 9}, {3, 7}, {5, 10}, {8, 11}, {4, 9}});
    return bidirected(12, links, cap);
  }
  if (config.topology == "ring") return bidirected(config.ring_nodes, ring_links(config.ring_nodes), cap);
  if (config.topology == "random") {
    const int n = config.random_nodes;
    std::vector<Link> all;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) all.push_back({a, b});
    }
    for (;;) {
      std::vector<Link> links;
      std::sample(all.begin(), all.end(), std::back_inserter(links), config.random_links, rng);
      if (connected(n, links)) return bidirected(n, links, cap);
    }
  }
  throw std::invalid_argument("no network preset for topology " + config.topology);
}

OpenShopInstance generate_open_shop(const BenchConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> p(0, config.max_processing);
  std::uniform_int_distribution<int> w(static_cast<int>(std::ceil(config.weight_min)),
                                       static_cast<int>(std::floor(config.weight_max)));
  OpenShopInstance shop;
  shop.machines = config.machines;
  for (int j = 0; j < config.jobs; ++j) {
    OpenShopJob job;
    job.weight = w(rng);
    do {
      job.p.assign(config.machines, 0.0);
      for (double& v : job.p) v = p(rng);
    } while (std::all_of(job.p.begin(), job.p.end(), [](double v) { return v == 0.0; }));
    shop.jobs.push_back(std::move(job));
  }
  return shop;
}

Instance generate_instance(const BenchConfig& config, std::uint64_t seed) {
  if (const auto errors = validate_bench_config(config); !errors.empty()) {
    throw std::invalid_argument("invalid bench config: " + errors.front());
  }
  if (config.topology == "open-shop") {
    return reduce_open_shop(generate_open_shop(config, seed), config.model);
  }
  std::mt19937_64 rng(seed);
  Network net = preset_network(config, rng);
  const std::vector<int> releases = release_slots(config, rng);
  std::uniform_int_distribution<int> flow_count(1, config.max_flows);
  std::uniform_int_distribution<int> node(0, net.node_count() - 1);
  std::uniform_real_distribution<double> demand(config.demand_min, config.demand_max);
  std::vector<Coflow> coflows;
  for (int j = 0; j < config.jobs; ++j) {
    Coflow c;
    c.weight = draw_weight(rng, config.weight_min, config.weight_max);
    const int flows = flow_count(rng);
    for (int i = 0; i < flows; ++i) {
      Flow f;
      f.source = node(rng);
      do f.sink = node(rng);
      while (f.sink == f.source);
      f.demand = demand(rng);
      f.release = releases[j];
      if (config.model == RoutingModel::kSinglePath) {
        f.path = random_shortest_path(net, f.source, f.sink, rng);
      }
      c.flows.push_back(std::move(f));
    }
    coflows.push_back(std::move(c));
  }
  return Instance(std::move(net), std::move(coflows), config.model);
}

std::vector<BenchCase> generate_cases(const BenchConfig& config) {
  std::vector<BenchCase> cases;
  for (int k = 0; k < config.instances; ++k) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(k);
    cases.push_back({generate_instance(config, seed), seed});
  }
  return cases;
}

std::vector<BenchRow> run_bench(const std::vector<BenchCase>& cases, const BenchConfig& config,
                                const SolverChoice& solver) {
  struct Task {
    size_t case_index;
    Strategy strategy;
    std::optional<double> epsilon;
  };
  std::vector<Task> tasks;
  for (size_t c = 0; c < cases.size(); ++c) {
    for (Strategy s : config.strategies) {
      if (s == Strategy::kIntervalStretch) {
        for (double e : config.epsilons) tasks.push_back({c, s, e});
      } else {
        tasks.push_back({c, s, std::nullopt});
      }
    }
  }
  std::vector<BenchRow> rows(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next.fetch_add(1); k < tasks.size(); k = next.fetch_add(1)) {
      const Task& task = tasks[k];
      const BenchCase& bc = cases[task.case_index];
      BenchRow& row = rows[k];
      row.seed = bc.seed;
      row.model = bc.instance.model();
      row.strategy = task.strategy;
      row.epsilon = task.epsilon;
      const auto start = std::chrono::steady_clock::now();
      try {
        PipelineOptions options;
        options.strategy = task.strategy;
        options.trials = config.trials;
        options.seed = bc.seed;
        if (task.epsilon) options.epsilon = *task.epsilon;
        options.solver = solver;
        const PipelineResult result = run_pipeline(bc.instance, options);
        if (!result.verified()) throw std::runtime_error("schedule failed verification");
        row.lp_objective = result.lp_objective;
        row.schedule_objective = result.report.objective;
        row.ratio = row.schedule_objective / row.lp_objective;
      } catch (const std::exception& e) {
        row.error = e.what();
        row.lp_objective = row.schedule_objective = row.ratio =
            std::numeric_limits<double>::quiet_NaN();
      }
      row.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    }
  };
  int workers = config.workers > 0 ? config.workers
                                   : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max<int>(1, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return rows;
}

std::string to_csv_line(const BenchRow& row) {
  std::string line = std::to_string(row.seed);
  line += ",";
  line += to_string(row.model);
  line += ",";
  line += to_string(row.strategy);
  line += ",";
  if (row.epsilon) line += format_number(*row.epsilon);
  for (double v : {row.lp_objective, row.schedule_objective, row.ratio}) {
    line += ",";
    line += format_number(v);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, ",%.3f", row.wall_ms);
  return line + buf;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchCsvHeader << '\n';
  for (const BenchRow& row : rows) out << to_csv_line(row) << '\n';
}

}  // namespace coflow
