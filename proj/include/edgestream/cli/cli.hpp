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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace edgestream::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kRuntimeAbort = 2, kInfeasible = 3 };

/// Written to <out>/manifest.json before a command executes, and rewritten
/// with artifact checksums when it exits.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config_paths;  // role -> absolute path
  std::uint64_t seed = 0;
  std::optional<std::string> mode;  // local-det, local-conc or sim
  std::string out_dir;
  std::map<std::string, std::string> checksums;  // path relative to out_dir -> SHA-256 hex
  std::string status = "running";                // running, ok or exit=<code>

  bool operator==(const RunManifest&) const = default;
};

nlohmann::ordered_json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Runs one command line (argv[0] is the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edgestream::cli
