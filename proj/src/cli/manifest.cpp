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

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include "edgestream/cli/cli.hpp"
#include "edgestream/core/error.hpp"

namespace edgestream::cli {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json to_json(const RunManifest& m) {
  ordered_json j;
  j["command"] = m.command;
  j["config_paths"] = ordered_json::object();
  for (const auto& [role, path] : m.config_paths) j["config_paths"][role] = path;
  j["seed"] = m.seed;
  j["mode"] = m.mode ? ordered_json(*m.mode) : ordered_json(nullptr);
  j["out_dir"] = m.out_dir;
  j["checksums"] = ordered_json::object();
  for (const auto& [file, sum] : m.checksums) j["checksums"][file] = sum;
  j["status"] = m.status;
  return j;
}

RunManifest manifest_from_json(const json& j) {
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.config_paths = j.at("config_paths").get<std::map<std::string, std::string>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("mode").is_null()) m.mode = j.at("mode").get<std::string>();
    m.out_dir = j.at("out_dir").get<std::string>();
    m.checksums = j.at("checksums").get<std::map<std::string, std::string>>();
    m.status = j.at("status").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw InvalidArgument("SHA-256 unavailable");
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

}  // namespace edgestream::cli
