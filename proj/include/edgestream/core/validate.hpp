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

#include <string>
#include <vector>

#include "edgestream/core/cluster.hpp"
#include "edgestream/core/pipeline.hpp"

namespace edgestream {

/// One broken rule. `rule` is a stable tag such as "cycle",
/// "unknown-endpoint", "duplicate-id" or "connectivity"; `element` names the
/// offending item(s).
struct Violation {
  std::string rule;
  std::string element;
  std::string message;

  bool operator==(const Violation&) const = default;
};

std::string to_string(const Violation& v);

std::vector<Violation> validate_pipeline(const PipelineSpec& p);

/// Kahn's algorithm with ties broken by ascending operator id.
/// Throws CyclicPipeline when the graph has a cycle.
std::vector<std::string> topological_order(const PipelineSpec& p);

std::vector<Violation> validate_cluster(const ClusterSpec& c);

/// Checks totality and pins of a placement against its pipeline and cluster
/// (structural only; capacity is checked by the cost model).
std::vector<Violation> validate_placement(const PipelineSpec& p, const ClusterSpec& c,
                                          const Placement& pl);

}  // namespace edgestream
