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

#include "edgestream/runtime/control.hpp"

#include <array>

#include "edgestream/orchestrate/cost.hpp"

namespace edgestream::runtime {

using nlohmann::json;

namespace {

bool is_count(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

constexpr std::array<std::pair<ControlKind, std::string_view>, 4> kKinds{{
    {ControlKind::kSetSampleRate, "set_sample_rate"},
    {ControlKind::kMigrate, "migrate"},
    {ControlKind::kSnapshot, "snapshot"},
    {ControlKind::kShutdown, "shutdown"},
}};

}  // namespace

std::string_view to_string(ControlKind k) {
  for (const auto& [kind, name] : kKinds) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<ControlKind> control_kind_from_string(std::string_view s) {
  for (const auto& [kind, name] : kKinds) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

ControlMessage migrate_message(std::uint64_t seq, std::string op, std::string to) {
  return {seq, ControlKind::kMigrate, std::move(op), json{{"to", std::move(to)}}};
}

std::vector<ScheduledControl> scheduled_controls_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("controls must be an array");
  std::vector<ScheduledControl> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& c = j[i];
    std::string where = "controls[" + std::to_string(i) + "]";
    if (!c.is_object()) throw ConfigError(where + " must be an object");
    ScheduledControl sc;
    for (const auto& [key, v] : c.items()) {
      if (key == "after" && is_count(v)) {
        sc.after = v.get<std::uint64_t>();
      } else if (key == "seq" && is_count(v)) {
        sc.message.seq = v.get<std::uint64_t>();
      } else if (key == "kind" && v.is_string()) {
        auto k = control_kind_from_string(v.get<std::string>());
        if (!k) throw ConfigError(where + ": unknown control kind '" + v.get<std::string>() + "'");
        sc.message.kind = *k;
      } else if (key == "target" && v.is_string()) {
        sc.message.target = v.get<std::string>();
      } else if (key == "payload" && v.is_object()) {
        sc.message.payload = v;
      } else {
        throw ConfigError(where + ": unexpected or mistyped key '" + key + "'");
      }
    }
    if (!c.contains("kind")) throw ConfigError(where + " needs 'kind'");
    if (!c.contains("seq")) sc.message.seq = i + 1;
    out.push_back(std::move(sc));
  }
  return out;
}

void check_migration(const PipelineSpec& p, const ClusterSpec& c, const Placement& current,
                     const std::string& op, const std::string& to) {
  const OperatorSpec* spec = p.find(op);
  if (spec == nullptr) throw UnknownOperator("no operator '" + op + "'");
  const NodeSpec* node = c.find(to);
  if (node == nullptr) throw InvalidArgument("migration target '" + to + "' is not a cluster node");
  if (!spec->movable || spec->pinned_node) throw InvalidArgument("operator '" + op + "' is not movable");
  const std::string& from = current.node_of(op);
  if (from == to) throw InvalidArgument("operator '" + op + "' already runs on '" + to + "'");

  Placement next = current;
  next.assignment[op] = to;
  auto est = orchestrate::estimate_cost(p, c, next, orchestrate::design_load(p));
  double util = est.utilization.count(to) ? est.utilization.at(to) : 0.0;
  if (util >= 1.0) {
    throw TargetInfeasible("moving '" + op + "' to '" + to + "' would load it to utilization " +
                           std::to_string(util));
  }
  double mem = 0.0;
  for (const auto& o : p.operators) {
    if (next.node_of(o.id) == to) mem += o.mem_demand;
  }
  if (mem > node->mem_capacity) {
    throw TargetInfeasible("moving '" + op + "' to '" + to + "' needs " + std::to_string(mem) +
                           " MB of " + std::to_string(node->mem_capacity));
  }
}

}  // namespace edgestream::runtime
