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

#include <json.hpp>

#include "edgestream/core/cluster.hpp"
#include "edgestream/core/error.hpp"
#include "edgestream/core/pipeline.hpp"

namespace edgestream::runtime {

EDGESTREAM_DEFINE_ERROR(UnknownOperator);
EDGESTREAM_DEFINE_ERROR(OutOfOrderControl);
EDGESTREAM_DEFINE_ERROR(TargetInfeasible);

enum class ControlKind { kSetSampleRate, kMigrate, kSnapshot, kShutdown };

std::string_view to_string(ControlKind k);
std::optional<ControlKind> control_kind_from_string(std::string_view s);

/// Internal API command. Sequence numbers start at 1 and must arrive in
/// order. Payloads: set_sample_rate {"rate": p} or {"k": n}; migrate
/// {"to": node}; snapshot and shutdown take none. Shutdown has no target.
struct ControlMessage {
  std::uint64_t seq = 0;
  ControlKind kind = ControlKind::kSnapshot;
  std::string target;
  nlohmann::json payload = nlohmann::json::object();
};

ControlMessage migrate_message(std::uint64_t seq, std::string op, std::string to);

struct ControlAck {
  std::uint64_t seq = 0;
  ControlKind kind = ControlKind::kSnapshot;
  std::string target;
  bool applied = false;
  std::string detail;
  /// Snapshot result: a serialized ModelState for learners, raw operator
  /// state otherwise.
  std::string state;
};

/// A control applied once the target operator has received `after` events
/// (for shutdown: once the sources have emitted `after` events).
struct ScheduledControl {
  std::uint64_t after = 0;
  ControlMessage message;
};

/// [{"after": n, "seq": s, "kind": "migrate", "target": "op", "payload": {...}}]
std::vector<ScheduledControl> scheduled_controls_from_json(const nlohmann::json& j);

/// Checks a migration against pins, movability and target capacity at the
/// design load. Throws UnknownOperator, InvalidArgument or TargetInfeasible.
void check_migration(const PipelineSpec& p, const ClusterSpec& c, const Placement& current,
                     const std::string& op, const std::string& to);

}  // namespace edgestream::runtime
