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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edgestream/orchestrate/cost.hpp"

namespace edgestream::orchestrate {

struct UtilizationSample {
  std::string node;
  std::uint64_t interval = 0;
  double cpu_util = 0.0;
  std::uint64_t queue_depth = 0;
  std::uint64_t events_processed = 0;
};

struct ControllerConfig {
  double hi = 0.85;
  double lo = 0.4;
  std::uint32_t patience = 3;
  std::uint32_t cooldown = 5;
  double interval_s = 1.0;
};

struct MigrationPlan {
  std::uint64_t interval = 0;
  std::string op;
  std::string from;
  std::string to;
  std::string action;  // offload_to_cloud, offload_to_edge or move
  double pre_p95_ms = 0.0;
  double post_p95_ms = 0.0;

  bool operator==(const MigrationPlan&) const = default;
};

/// Hysteresis controller state. After a plan, a node's overload counter only
/// re-arms once that node reports util <= hi, and the underload counter only
/// once some node reports util >= lo.
class ControllerState {
 public:
  explicit ControllerState(ControllerConfig config = {});

  const ControllerConfig& config() const { return config_; }
  std::uint32_t cooldown_left() const { return cooldown_left_; }
  std::uint32_t overload_count(const std::string& node) const;
  std::uint32_t underload_count() const { return under_; }

 private:
  friend std::optional<MigrationPlan> offload_step(ControllerState&, const std::vector<UtilizationSample>&,
                                                   const Placement&, const PipelineSpec&,
                                                   const ClusterSpec&, const Objective&, double,
                                                   const CostModel&);

  ControllerConfig config_;
  std::map<std::string, std::uint32_t> over_;
  std::map<std::string, bool> over_armed_;
  std::uint32_t under_ = 0;
  bool under_armed_ = true;
  std::uint32_t cooldown_left_ = 0;
};

/// One control interval. `input_eps` is the load used for predictions.
std::optional<MigrationPlan> offload_step(ControllerState& cs,
                                          const std::vector<UtilizationSample>& samples,
                                          const Placement& current, const PipelineSpec& p,
                                          const ClusterSpec& c, const Objective& obj,
                                          double input_eps, const CostModel& model = {});

/// CSV with header interval,node,action,operator,target,pre_p95_ms,post_p95_ms;
/// `node` is the source node.
void write_decisions_header(std::ostream& out);
void write_decision(std::ostream& out, const MigrationPlan& plan);

}  // namespace edgestream::orchestrate
