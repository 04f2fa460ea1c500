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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edgestream/core/cluster.hpp"
#include "edgestream/core/error.hpp"
#include "edgestream/core/pipeline.hpp"

namespace edgestream::orchestrate {

struct CostModel {
  double p95_factor = 1.2;
};

struct CostEstimate {
  double p95_latency_ms = 0.0;
  double throughput_eps = 0.0;
  double energy_per_hour = 0.0;
  double money_per_hour = 0.0;
  std::map<std::string, double> utilization;  // per node
  std::map<std::string, double> op_latency_ms;
  /// Nodes with utilization >= 1; latency is then infinite.
  std::vector<std::string> infeasible_utilization;

  bool operator==(const CostEstimate&) const = default;
};

struct Objective {
  double w_lat = 1.0;
  double w_energy = 1.0;
  double w_money = 1.0;

  /// Throws InvalidArgument unless weights are finite, >= 0 and not all zero.
  void check() const;
  double scalar(const CostEstimate& e) const;
};

/// Parses "latency", "energy", "money", "balanced" or "w_lat,w_energy,w_money".
Objective objective_from_string(std::string_view s);

/// Output events per input event: params.selectivity, or params.rate for
/// sampling operators, default 1.
double selectivity(const OperatorSpec& op);

/// Events/s entering each operator when every source receives `input_eps`.
/// Output rate is input times params.selectivity (or params.rate for
/// sampling operators), default 1.
std::map<std::string, double> operator_rates(const PipelineSpec& p, double input_eps);

/// CPU units an operator uses at its input rate.
double cpu_used(const OperatorSpec& op, double eps_in);

/// Cost of a possibly partial placement: operators without an assignment are
/// left out along with their edges.
CostEstimate estimate_cost(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl,
                           double input_eps, const CostModel& model = {});

/// Design load used by the planners.
inline double design_load(const PipelineSpec& p) { return p.sla.min_throughput_eps; }

/// Capacity (utilization < 1, memory), pins and SLA. Returns the reasons a
/// placement is infeasible; empty means feasible. Unassigned operators are
/// ignored, so partial placements can be checked.
std::vector<std::string> infeasibility(const PipelineSpec& p, const ClusterSpec& c,
                                       const Placement& pl, const CostEstimate& e);

}  // namespace edgestream::orchestrate
