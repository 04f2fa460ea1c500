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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "edgestream/core/cluster.hpp"
#include "edgestream/core/pipeline.hpp"
#include "edgestream/core/schema.hpp"
#include "edgestream/core/validate.hpp"

namespace edgestream {

/// Strict JSON conversions for the config document. Unknown keys and type
/// errors are reported as violations rather than thrown; the returned value
/// is only meaningful when the violation list is empty.
template <typename T>
struct Parsed {
  T value{};
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

nlohmann::ordered_json to_json(const PipelineSpec& p);
nlohmann::ordered_json to_json(const ClusterSpec& c);
nlohmann::ordered_json to_json(const Placement& pl);
nlohmann::ordered_json to_json(const Schema& s);

Parsed<PipelineSpec> pipeline_from_json(const nlohmann::json& j);
Parsed<ClusterSpec> cluster_from_json(const nlohmann::json& j);
Parsed<Placement> placement_from_json(const nlohmann::json& j);
Parsed<Schema> schema_from_json(const nlohmann::json& j);

/// The top-level config document: {"pipeline": ..., "cluster": ..., "generator": ...}.
/// The generator section is kept raw and interpreted by the generate module.
struct Config {
  std::optional<PipelineSpec> pipeline;
  std::optional<ClusterSpec> cluster;
  std::optional<nlohmann::json> generator;
};

/// Parses a config document. Violations for unknown keys carry the 1-based
/// line of the first occurrence of the key in `text` in their message.
Parsed<Config> parse_config(std::string_view text);

std::string dump_config(const Config& config);

/// 1-based line number of the first occurrence of `"key"` in `text`, or 0.
int line_of_key(std::string_view text, std::string_view key);

}  // namespace edgestream
