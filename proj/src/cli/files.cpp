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

#include "files.hpp"

#include <fstream>
#include <sstream>

#include "edgestream/connectors/codec.hpp"
#include "edgestream/connectors/io.hpp"
#include "edgestream/core/config.hpp"
#include "edgestream/core/validate.hpp"

namespace edgestream::cli::detail {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

namespace {

[[noreturn]] void fail(const fs::path& path, const std::vector<Violation>& violations) {
  std::string msg = path.string() + ":";
  for (const auto& v : violations) msg += "\n  " + to_string(v);
  throw ConfigError(msg);
}

/// Parses `text` as a config document, wrapping a bare section first. The
/// wrapper shares the first line, so reported line numbers stay correct.
Config parse_section(const fs::path& path, const std::string& text, const std::string& section,
                     const std::string& bare_marker) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(path, {{"syntax", "", e.what()}});
  }
  const bool wrapped = j.is_object() && j.contains(section) && !j.contains(bare_marker);
  auto parsed = parse_config(wrapped ? text : "{\"" + section + "\": " + text + "\n}");
  if (!parsed.ok()) fail(path, parsed.violations);
  return std::move(parsed.value);
}

}  // namespace

PipelineSpec load_pipeline(const fs::path& path) {
  auto config = parse_section(path, read_text(path), "pipeline", "operators");
  if (!config.pipeline) fail(path, {{"missing", "pipeline", "no pipeline section"}});
  if (auto v = validate_pipeline(*config.pipeline); !v.empty()) fail(path, v);
  return std::move(*config.pipeline);
}

ClusterSpec load_cluster(const fs::path& path) {
  auto config = parse_section(path, read_text(path), "cluster", "nodes");
  if (!config.cluster) fail(path, {{"missing", "cluster", "no cluster section"}});
  if (auto v = validate_cluster(*config.cluster); !v.empty()) fail(path, v);
  return std::move(*config.cluster);
}

Placement load_placement(const fs::path& path, const PipelineSpec& p, const ClusterSpec& c) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    fail(path, {{"syntax", "", e.what()}});
  }
  auto parsed = placement_from_json(j);
  if (!parsed.ok()) fail(path, parsed.violations);
  if (auto v = validate_placement(p, c, parsed.value); !v.empty()) fail(path, v);
  return std::move(parsed.value);
}

LoadedGenerator load_generator(const fs::path& path) {
  const std::string text = read_text(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(path, {{"syntax", "", e.what()}});
  }
  if (j.is_object() && j.contains("generator") && !j.contains("kind")) {
    auto config = parse_config(text);
    if (!config.ok()) fail(path, config.violations);
    j = *config.value.generator;
  }
  auto parsed = generate::generator_from_json(j);
  for (auto& v : parsed.violations) {
    if (v.rule != "unknown-key") continue;
    if (int line = line_of_key(text, v.element); line > 0) v.message = "line " + std::to_string(line) + ": " + v.message;
  }
  if (!parsed.ok()) fail(path, parsed.violations);
  LoadedGenerator out{std::move(parsed.value), std::nullopt};
  if (out.spec.kind == generate::GeneratorKind::kFitted) {
    fs::path model = out.spec.model;
    if (model.is_relative()) model = path.parent_path() / model;
    try {
      out.fitted = generate::fitted_model_from_json(json::parse(read_text(model)));
    } catch (const json::parse_error& e) {
      throw ConfigError(model.string() + ": " + e.what());
    } catch (const InvalidArgument& e) {
      throw ConfigError(model.string() + ": " + e.what());
    }
  }
  return out;
}

Event as_raw(const Event& e) {
  Event r;
  r.ts = e.ts;
  r.values["raw"] = connectors::encode_event(e);
  return r;
}

std::vector<Event> load_events(const fs::path& path, bool raw) {
  if (!raw) {
    try {
      return connectors::read_events(path);
    } catch (const Error& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::vector<Event> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Event e;
    e.ts = static_cast<std::int64_t>(out.size());
    e.values["raw"] = line;
    out.push_back(std::move(e));
  }
  return out;
}

json load_json_arg(const std::string& arg) {
  const std::string text = fs::exists(arg) ? read_text(arg) : arg;
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + arg + "' is neither a readable JSON file nor inline JSON: " + e.what());
  }
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  if (text.empty() || text.size() > 20) throw ConfigError("seed '" + text + "' is not a 64-bit unsigned integer");
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw ConfigError("seed '" + text + "' is not a 64-bit unsigned integer");
    const std::uint64_t d = static_cast<std::uint64_t>(ch - '0');
    if (v > (UINT64_MAX - d) / 10) throw ConfigError("seed '" + text + "' is not a 64-bit unsigned integer");
    v = v * 10 + d;
  }
  return v;
}

}  // namespace edgestream::cli::detail
