// Copyright 2026 The edgestream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edgestream {

enum class Tier { kCloud, kEdge };

std::string_view to_string(Tier tier);

struct NodeSpec {
  std::string id;
  Tier tier = Tier::kCloud;
  double cpu_capacity = 1.0;
  double mem_capacity = 1024.0;
  double power_coeff = 0.0;        // energy units per CPU-unit-hour
  double cost_per_cpu_hour = 0.0;  // currency

  bool operator==(const NodeSpec&) const = default;
};

struct LinkSpec {
  std::string from;
  std::string to;
  double latency_ms = 0.0;
  double bandwidth_mbps = 1000.0;

  bool operator==(const LinkSpec&) const = default;
};

struct ClusterSpec {
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;

  const NodeSpec* find(std::string_view id) const;

  /// Link between two nodes. Links are usable in both directions; a declared
  /// reverse link takes precedence. The self-link has zero latency and
  /// infinite bandwidth. Returns nullopt when the pair is not connected.
  std::optional<LinkSpec> link(std::string_view from, std::string_view to) const;

  bool operator==(const ClusterSpec&) const = default;
};

/// Total map from operator id to node id.
struct Placement {
  std::map<std::string, std::string, std::less<>> assignment;

  const std::string& node_of(std::string_view op) const;
  bool operator==(const Placement&) const = default;
};

}  // namespace edgestream
