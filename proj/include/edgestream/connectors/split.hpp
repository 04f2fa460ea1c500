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
#include <variant>
#include <vector>

#include <json.hpp>

#include "edgestream/core/value.hpp"

namespace edgestream::connectors {

enum class CompareOp { kLt, kLe, kGt, kGe, kEq, kNe };

/// Compares a field to a constant. Numeric operands compare numerically,
/// categorical ones by string equality (kEq/kNe only). A missing or absent
/// field never matches.
struct FieldCompare {
  std::string field;
  CompareOp op = CompareOp::kEq;
  Value operand;
};

struct KeyPrefix {
  std::string prefix;
};

struct HasLabel {
  bool present = true;
};

using SplitPredicate = std::variant<FieldCompare, KeyPrefix, HasLabel>;

struct SplitRule {
  SplitPredicate predicate;
  std::string target;
};

/// Ordered rule list with a mandatory default target.
struct SplitRules {
  std::vector<SplitRule> rules;
  std::string default_target;
};

bool matches(const SplitPredicate& pred, const Event& e);

/// Target of the first matching rule, else the default.
const std::string& split(const Event& e, const SplitRules& rules);

/// Parses {"rules": [{"when": {...}, "to": "id"}], "default": "id"}.
/// Predicates: {"key_prefix": "a"}, {"has_label": true},
/// {"field": "x", "op": "<", "value": 3}.
SplitRules split_rules_from_json(const nlohmann::json& j);

}  // namespace edgestream::connectors
