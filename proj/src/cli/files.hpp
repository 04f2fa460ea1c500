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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgestream/core/cluster.hpp"
#include "edgestream/core/pipeline.hpp"
#include "edgestream/generate/generator.hpp"

namespace edgestream::cli::detail {

std::string read_text(const std::filesystem::path& path);

/// Each loader accepts either a bare document or a config document holding
/// it under its section key, and throws ConfigError naming the file and
/// every violation.
PipelineSpec load_pipeline(const std::filesystem::path& path);
ClusterSpec load_cluster(const std::filesystem::path& path);
Placement load_placement(const std::filesystem::path& path, const PipelineSpec& p, const ClusterSpec& c);

struct LoadedGenerator {
  generate::GeneratorSpec spec;
  std::optional<generate::FittedModel> fitted;  // a relative model path resolves against the spec's directory
};
LoadedGenerator load_generator(const std::filesystem::path& path);

/// Text records, or with `raw` every non-empty line as an event whose "raw"
/// field holds the line and whose ts is its 0-based index.
std::vector<Event> load_events(const std::filesystem::path& path, bool raw);
Event as_raw(const Event& e);

/// A path to a JSON file, or inline JSON.
nlohmann::json load_json_arg(const std::string& arg);

/// Strict unsigned 64-bit decimal.
std::uint64_t parse_seed(const std::string& text);

}  // namespace edgestream::cli::detail
