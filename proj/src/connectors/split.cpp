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

#include "edgestream/connectors/split.hpp"

#include "edgestream/core/error.hpp"

namespace edgestream::connectors {

namespace {

bool compare(CompareOp op, double a, double b) {
  switch (op) {
    case CompareOp::kLt: return a < b;
    case CompareOp::kLe: return a <= b;
    case CompareOp::kGt: return a > b;
    case CompareOp::kGe: return a >= b;
    case CompareOp::kEq: return a == b;
    case CompareOp::kNe: return a != b;
  }
  return false;
}

CompareOp compare_op_from_string(const std::string& s) {
  if (s == "<") return CompareOp::kLt;
  if (s == "<=") return CompareOp::kLe;
  if (s == ">") return CompareOp::kGt;
  if (s == ">=") return CompareOp::kGe;
  if (s == "==") return CompareOp::kEq;
  if (s == "!=") return CompareOp::kNe;
  throw ConfigError("unknown comparison '" + s + "'");
}

}  // namespace

bool matches(const SplitPredicate& pred, const Event& e) {
  return std::visit(
      [&e](const auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, KeyPrefix>) {
          return e.key.starts_with(p.prefix);
        } else if constexpr (std::is_same_v<T, HasLabel>) {
          return e.label.has_value() == p.present;
        } else {
          auto it = e.values.find(p.field);
          if (it == e.values.end() || is_missing(it->second)) return false;
          const Value& v = it->second;
          if (is_numeric(v) && is_numeric(p.operand)) {
            return compare(p.op, std::get<double>(v), std::get<double>(p.operand));
          }
          if (is_categorical(v) && is_categorical(p.operand)) {
            const bool eq = std::get<std::string>(v) == std::get<std::string>(p.operand);
            if (p.op == CompareOp::kEq) return eq;
            if (p.op == CompareOp::kNe) return !eq;
          }
          return false;
        }
      },
      pred);
}

const std::string& split(const Event& e, const SplitRules& rules) {
  for (const auto& r : rules.rules) {
    if (matches(r.predicate, e)) return r.target;
  }
  return rules.default_target;
}

SplitRules split_rules_from_json(const nlohmann::json& j) {
  SplitRules out;
  if (!j.contains("default") || !j["default"].is_string()) {
    throw ConfigError("split rules need a string 'default' target");
  }
  out.default_target = j["default"].get<std::string>();
  if (!j.contains("rules")) return out;
  for (const auto& r : j["rules"]) {
    const auto& when = r.at("when");
    SplitRule rule;
    rule.target = r.at("to").get<std::string>();
    if (when.contains("key_prefix")) {
      rule.predicate = KeyPrefix{when["key_prefix"].get<std::string>()};
    } else if (when.contains("has_label")) {
      rule.predicate = HasLabel{when["has_label"].get<bool>()};
    } else if (when.contains("field")) {
      FieldCompare fc;
      fc.field = when["field"].get<std::string>();
      fc.op = compare_op_from_string(when.value("op", std::string("==")));
      const auto& v = when.at("value");
      if (v.is_number()) fc.operand = v.get<double>();
      else if (v.is_string()) fc.operand = v.get<std::string>();
      else throw ConfigError("split comparison value must be number or string");
      rule.predicate = std::move(fc);
    } else {
      throw ConfigError("split rule has no recognised predicate");
    }
    out.rules.push_back(std::move(rule));
  }
  return out;
}

}  // namespace edgestream::connectors
