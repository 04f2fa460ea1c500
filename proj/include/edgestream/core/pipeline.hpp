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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace edgestream {

/// Every operator the runtime knows how to instantiate.
enum class OperatorKind {
  kSource,
  kSink,
  kIdentity,
  kParse,
  kSplit,
  kImpute,
  kNormalize,
  kWindowJoin,
  kLabelJoin,
  kReservoirSample,
  kHashProject,
  kSummarize,
  kHoeffdingTree,
  kKMeans,
  kAnomaly,
};

std::string_view to_string(OperatorKind kind);
std::optional<OperatorKind> operator_kind_from_string(std::string_view name);

struct OperatorSpec {
  std::string id;
  OperatorKind kind = OperatorKind::kIdentity;
  nlohmann::json params = nlohmann::json::object();
  double cpu_demand = 1.0;  // CPU units per 1000 events/s
  double mem_demand = 0.0;  // MB
  double state_size = 0.0;  // MB moved on migration
  std::optional<std::string> pinned_node;
  bool movable = true;

  bool operator==(const OperatorSpec&) const = default;
};

struct EdgeSpec {
  std::string from;
  std::string to;
  double est_bytes_per_event = 0.0;

  bool operator==(const EdgeSpec&) const = default;
};

struct SlaSpec {
  double max_p95_latency_ms = 1e9;
  double min_throughput_eps = 1.0;
  double max_monetary_cost = 1e9;

  bool operator==(const SlaSpec&) const = default;
};

struct PipelineSpec {
  std::vector<OperatorSpec> operators;
  std::vector<EdgeSpec> edges;
  SlaSpec sla;
  std::uint64_t seed = 0;

  const OperatorSpec* find(std::string_view id) const;
  std::vector<const EdgeSpec*> in_edges(std::string_view id) const;
  std::vector<const EdgeSpec*> out_edges(std::string_view id) const;

  bool operator==(const PipelineSpec&) const = default;
};

}  // namespace edgestream
