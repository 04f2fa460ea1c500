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
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgestream/core/validate.hpp"

namespace edgestream {

// Reads fields of one JSON object, recording violations for type errors,
// missing required keys and keys that were never read.
class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& j, std::string path, std::vector<Violation>& out)
      : j_(j), path_(std::move(path)), out_(out) {
    if (!j_.is_object()) {
      fail("type", path_, "expected an object");
      ok_ = false;
    }
  }

  ~ObjectReader() {
    if (!ok_) return;
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.contains(key)) {
        out_.push_back({"unknown-key", key, "unknown key '" + key + "' in " + path_});
      }
    }
  }

  ObjectReader(const ObjectReader&) = delete;
  ObjectReader& operator=(const ObjectReader&) = delete;

  const nlohmann::json* get(const std::string& key, bool required) {
    seen_.insert(key);
    if (!ok_) return nullptr;
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) {
      if (required) fail("missing-key", key, "missing required key '" + key + "' in " + path_);
      return nullptr;
    }
    return &*it;
  }

  void number(const std::string& key, double& dst, bool required = true) {
    if (const nlohmann::json* v = get(key, required)) {
      if (v->is_number()) {
        dst = v->get<double>();
      } else {
        fail("type", key, "'" + key + "' in " + path_ + " must be a number");
      }
    }
  }

  void text(const std::string& key, std::string& dst, bool required = true) {
    if (const nlohmann::json* v = get(key, required)) {
      if (v->is_string()) {
        dst = v->get<std::string>();
      } else {
        fail("type", key, "'" + key + "' in " + path_ + " must be a string");
      }
    }
  }

  void opt_text(const std::string& key, std::optional<std::string>& dst) {
    if (const nlohmann::json* v = get(key, false)) {
      if (v->is_string()) {
        dst = v->get<std::string>();
      } else {
        fail("type", key, "'" + key + "' in " + path_ + " must be a string");
      }
    }
  }

  void boolean(const std::string& key, bool& dst, bool required = true) {
    if (const nlohmann::json* v = get(key, required)) {
      if (v->is_boolean()) {
        dst = v->get<bool>();
      } else {
        fail("type", key, "'" + key + "' in " + path_ + " must be a boolean");
      }
    }
  }

  const nlohmann::json* array(const std::string& key, bool required = true) {
    const nlohmann::json* v = get(key, required);
    if (v && !v->is_array()) {
      fail("type", key, "'" + key + "' in " + path_ + " must be an array");
      return nullptr;
    }
    return v;
  }

  void fail(std::string rule, std::string element, std::string message) {
    out_.push_back({std::move(rule), std::move(element), std::move(message)});
  }

  const std::string& path() const { return path_; }

 private:
  const nlohmann::json& j_;
  std::string path_;
  std::vector<Violation>& out_;
  std::set<std::string> seen_;
  bool ok_ = true;
};

}  // namespace edgestream
