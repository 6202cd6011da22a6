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

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "coflow/model.hpp"

namespace coflow {

/// Raised for unreadable, missing, or malformed files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kFormatVersion = 1;

// Instance file:
//   {"format": 1, "model": "single-path" | "free-path",
//    "nodes": ["s", ...],
//    "edges": [{"id": "e1", "src": "s", "dst": "v1", "cap": 1.0}, ...],
//    "coflows": [{"weight": 1.0,
//                 "flows": [{"src": "s", "dst": "t", "demand": 3.0,
//                            "release": 0, "path": ["e1", "e4"]}]}]}
// Unknown node or edge names are kept as unresolved (-1) references so that
// validate_instance can report them. Fractional releases are rounded up.
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& instance);

// Schedule file:
//   {"format": 1, "model": ..., "slot_count": T,
//    "flows": [{"coflow": j, "flow": i, "amounts": [slot 1, ..., slot T],
//               "edges": {"e1": [...], ...}}]}
// "edges" appears only in free-path schedules and lists edges with traffic.
RateSchedule schedule_from_json(const nlohmann::json& doc,
                                const Instance& instance);
nlohmann::json schedule_to_json(const RateSchedule& schedule,
                                const Instance& instance);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

inline Instance load_instance(const std::string& path) {
  return instance_from_json(read_json_file(path));
}

}  // namespace coflow
