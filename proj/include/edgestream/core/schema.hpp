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
#include <vector>

#include "edgestream/core/value.hpp"

namespace edgestream {

enum class FieldKind { kNumeric, kCategorical };

struct FieldSpec {
  std::string name;
  FieldKind kind = FieldKind::kNumeric;
  std::optional<std::vector<std::string>> categories;

  bool operator==(const FieldSpec&) const = default;
};

struct Schema {
  std::vector<FieldSpec> fields;
  std::optional<std::string> label_field;

  const FieldSpec* find(std::string_view name) const;
  bool operator==(const Schema&) const = default;
};

struct Violation;

std::vector<Violation> validate_schema(const Schema& schema);

/// 64-bit fingerprint over the canonical form of the schema.
std::uint64_t schema_fingerprint(const Schema& schema);

/// Infers a schema from one event: numeric values -> numeric fields,
/// categorical values -> categorical fields without a category list.
/// Missing values are treated as numeric.
Schema infer_schema(const Event& e);

}  // namespace edgestream
