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
#include <map>
#include <optional>
#include <string>
#include <variant>

namespace edgestream {

/// Explicit marker for a missing field value.
struct Missing {
  bool operator==(const Missing&) const = default;
};

/// A field value: missing marker, 64-bit float, or categorical text.
using Value = std::variant<Missing, double, std::string>;

inline bool is_missing(const Value& v) { return std::holds_alternative<Missing>(v); }
inline bool is_numeric(const Value& v) { return std::holds_alternative<double>(v); }
inline bool is_categorical(const Value& v) { return std::holds_alternative<std::string>(v); }

/// Field name -> value. Ordered by name so iteration is deterministic.
using ValueMap = std::map<std::string, Value, std::less<>>;

/// The unit flowing on every stream.
struct Event {
  std::int64_t ts = 0;  // milliseconds since epoch
  std::string key;
  ValueMap values;
  std::optional<std::string> label;
  std::optional<std::string> instance_id;
  std::string source;

  bool operator==(const Event&) const = default;
};

/// Returns true when `e` satisfies the Event invariants (ts >= 0, numeric
/// values finite).
bool event_is_valid(const Event& e);

}  // namespace edgestream
