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

#include "coflow/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace coflow {

using nlohmann::json;

namespace {

void check_format(const json& doc) {
  if (!doc.is_object()) throw IoError("document is not a JSON object");
  const int format = doc.value("format", 0);
  if (format != kFormatVersion) {
    throw IoError("unsupported format version " + std::to_string(format));
  }
}

template <typename T>
T require(const json& obj, const char* key) {
  if (!obj.contains(key)) throw IoError(std::string("missing field '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IoError(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

Instance instance_from_json(const json& doc) {
  check_format(doc);
  const auto model = parse_routing_model(require<std::string>(doc, "model"));
  if (!model) throw IoError("unknown model");

  std::vector<std::string> nodes = require<std::vector<std::string>>(doc, "nodes");
  auto node_of = [&](const std::string& name) {
    for (size_t v = 0; v < nodes.size(); ++v) {
      if (nodes[v] == name) return static_cast<int>(v);
    }
    return -1;
  };

  std::vector<Edge> edges;
  for (const json& e : require<json>(doc, "edges")) {
    Edge edge;
    edge.id = e.at("id").is_string() ? e.at("id").get<std::string>()
                                     : e.at("id").dump();
    edge.src = node_of(require<std::string>(e, "src"));
    edge.dst = node_of(require<std::string>(e, "dst"));
    edge.capacity = require<double>(e, "cap");
    edges.push_back(std::move(edge));
  }
  auto edge_of = [&](const std::string& id) {
    for (size_t k = 0; k < edges.size(); ++k) {
      if (edges[k].id == id) return static_cast<int>(k);
    }
    return -1;
  };

  std::vector<Coflow> coflows;
  for (const json& c : require<json>(doc, "coflows")) {
    Coflow cf;
    cf.weight = require<double>(c, "weight");
    for (const json& f : require<json>(c, "flows")) {
      Flow flow;
      flow.source = node_of(require<std::string>(f, "src"));
      flow.sink = node_of(require<std::string>(f, "dst"));
      flow.demand = require<double>(f, "demand");
      flow.release = static_cast<int>(std::ceil(f.value("release", 0.0) - 1e-12));
      if (f.contains("path") && !f.at("path").is_null()) {
        for (const json& id : f.at("path")) {
          flow.path.push_back(edge_of(id.is_string() ? id.get<std::string>() : id.dump()));
        }
      }
      cf.flows.push_back(std::move(flow));
    }
    coflows.push_back(std::move(cf));
  }
  return Instance(Network(std::move(nodes), std::move(edges)), std::move(coflows),
                  *model);
}

json instance_to_json(const Instance& instance) {
  const Network& net = instance.network();
  auto name = [&](int v) { return v >= 0 ? net.nodes()[v] : std::string("?"); };
  json doc;
  doc["format"] = kFormatVersion;
  doc["model"] = std::string(to_string(instance.model()));
  doc["nodes"] = net.nodes();
  doc["edges"] = json::array();
  for (const Edge& e : net.edges()) {
    doc["edges"].push_back(
        {{"id", e.id}, {"src", name(e.src)}, {"dst", name(e.dst)}, {"cap", e.capacity}});
  }
  doc["coflows"] = json::array();
  for (const Coflow& cf : instance.coflows()) {
    json flows = json::array();
    for (const Flow& f : cf.flows) {
      json jf = {{"src", name(f.source)},
                 {"dst", name(f.sink)},
                 {"demand", f.demand},
                 {"release", f.release}};
      if (!f.path.empty()) {
        json path = json::array();
        for (int e : f.path) path.push_back(e >= 0 ? net.edge(e).id : std::string("?"));
        jf["path"] = std::move(path);
      }
      flows.push_back(std::move(jf));
    }
    doc["coflows"].push_back({{"weight", cf.weight}, {"flows", std::move(flows)}});
  }
  return doc;
}

RateSchedule schedule_from_json(const json& doc, const Instance& instance) {
  check_format(doc);
  RateSchedule s;
  s.slot_count = require<int>(doc, "slot_count");
  if (s.slot_count < 0) throw IoError("negative slot_count");
  const int flows = instance.flow_count();
  const int edges = instance.network().edge_count();
  s.amount = Eigen::MatrixXd::Zero(flows, s.slot_count);
  const bool free_path = instance.model() == RoutingModel::kFreePath;
  if (free_path) s.edge_amount.assign(flows, Eigen::MatrixXd::Zero(edges, s.slot_count));

  for (const json& f : require<json>(doc, "flows")) {
    const int j = require<int>(f, "coflow");
    const int i = require<int>(f, "flow");
    if (j < 0 || j >= instance.coflow_count() ||
        i < 0 || i >= static_cast<int>(instance.coflows()[j].flows.size())) {
      throw IoError("schedule references an unknown flow");
    }
    const int k = instance.flat_index(j, i);
    const auto amounts = require<std::vector<double>>(f, "amounts");
    if (static_cast<int>(amounts.size()) != s.slot_count) {
      throw IoError("amounts length differs from slot_count");
    }
    for (int t = 0; t < s.slot_count; ++t) s.amount(k, t) = amounts[t];
    if (f.contains("edges")) {
      if (!free_path) throw IoError("single-path schedule carries edge amounts");
      for (const auto& [id, values] : f.at("edges").items()) {
        const auto e = instance.network().edge_index(id);
        if (!e) throw IoError("schedule references unknown edge " + id);
        const auto row = values.get<std::vector<double>>();
        if (static_cast<int>(row.size()) != s.slot_count) {
          throw IoError("edge amounts length differs from slot_count");
        }
        for (int t = 0; t < s.slot_count; ++t) s.edge_amount[k](*e, t) = row[t];
      }
    }
  }
  return s;
}

json schedule_to_json(const RateSchedule& schedule, const Instance& instance) {
  json doc;
  doc["format"] = kFormatVersion;
  doc["model"] = std::string(to_string(instance.model()));
  doc["slot_count"] = schedule.slot_count;
  doc["flows"] = json::array();
  for (int k = 0; k < instance.flow_count(); ++k) {
    const FlowRef ref = instance.ref(k);
    std::vector<double> amounts(schedule.slot_count);
    for (int t = 0; t < schedule.slot_count; ++t) amounts[t] = schedule.amount(k, t);
    json jf = {{"coflow", ref.coflow}, {"flow", ref.flow}, {"amounts", amounts}};
    if (!schedule.edge_amount.empty()) {
      json edges = json::object();
      const Eigen::MatrixXd& m = schedule.edge_amount[k];
      for (int e = 0; e < m.rows(); ++e) {
        if ((m.row(e).array() != 0.0).any()) {
          std::vector<double> row(m.cols());
          for (int t = 0; t < m.cols(); ++t) row[t] = m(e, t);
          edges[instance.network().edge(e).id] = row;
        }
      }
      jf["edges"] = std::move(edges);
    }
    doc["flows"].push_back(std::move(jf));
  }
  return doc;
}

json read_json_file(const std::string& path) {
  if (!std::filesystem::exists(path)) throw IoError(path + ": not found");
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot write");
  out << doc.dump(1) << '\n';
}

}  // namespace coflow
