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
#include <string>
#include <vector>

#include "edgestream/core/cluster.hpp"
#include "edgestream/core/pipeline.hpp"
#include "edgestream/core/rng.hpp"

namespace edgestream::oracles {

struct Instance {
  PipelineSpec pipeline;
  ClusterSpec cluster;
};

/// Random DAG of 2..max_ops operators over 2..max_nodes nodes (at least one
/// edge and one cloud node, fully linked). The source is pinned to an edge
/// node half the time. Cloud capacity alone always fits the whole pipeline.
inline Instance random_instance(std::uint64_t seed, std::size_t max_ops = 6, std::size_t max_nodes = 4) {
  Rng rng(seed);
  Instance in;
  const std::size_t n_nodes = 2 + rng.below(max_nodes - 1);
  const std::size_t n_edge = 1 + rng.below(n_nodes - 1);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    NodeSpec n;
    const bool edge = i < n_edge;
    n.id = (edge ? "e" : "c") + std::to_string(i);
    n.tier = edge ? Tier::kEdge : Tier::kCloud;
    n.cpu_capacity = edge ? rng.uniform(1.0, 2.0) : rng.uniform(6.0, 10.0);
    n.mem_capacity = edge ? 512 : 4096;
    n.power_coeff = edge ? rng.uniform(0.5, 1.0) : rng.uniform(1.0, 2.0);
    n.cost_per_cpu_hour = edge ? 0.0 : rng.uniform(0.5, 2.0);
    in.cluster.nodes.push_back(n);
  }
  for (std::size_t i = 0; i < n_nodes; ++i) {
    for (std::size_t j = i + 1; j < n_nodes; ++j) {
      const bool cross = (i < n_edge) != (j < n_edge);
      in.cluster.links.push_back({in.cluster.nodes[i].id, in.cluster.nodes[j].id,
                                  cross ? rng.uniform(5.0, 20.0) : rng.uniform(0.5, 2.0),
                                  rng.uniform(10.0, 1000.0)});
    }
  }
  const std::size_t n_ops = 2 + rng.below(max_ops - 1);
  for (std::size_t i = 0; i < n_ops; ++i) {
    OperatorSpec op;
    op.id = "op" + std::to_string(i);
    op.kind = i == 0 ? OperatorKind::kSource : OperatorKind::kIdentity;
    op.cpu_demand = rng.uniform(0.5, 2.5);
    op.mem_demand = rng.uniform(10.0, 200.0);
    if (i == 0 && rng.bernoulli(0.5)) {
      op.pinned_node = in.cluster.nodes[rng.below(n_edge)].id;
      op.movable = false;
    }
    in.pipeline.operators.push_back(op);
    if (i > 0) {
      in.pipeline.edges.push_back({"op" + std::to_string(rng.below(i)), op.id, rng.uniform(50.0, 2000.0)});
    }
  }
  in.pipeline.sla.min_throughput_eps = rng.uniform(100.0, 300.0);
  in.pipeline.sla.max_p95_latency_ms = 1e6;
  in.pipeline.sla.max_monetary_cost = 1e6;
  return in;
}

/// Capacity and pin check written against the raw specs: every operator sees
/// the full input rate (no selectivity in random instances).
inline std::vector<std::string> check_capacity_and_pins(const PipelineSpec& p, const ClusterSpec& c,
                                                        const std::map<std::string, std::string, std::less<>>& a,
                                                        double input_eps) {
  std::vector<std::string> problems;
  std::map<std::string, double> cpu, mem;
  for (const auto& op : p.operators) {
    auto it = a.find(op.id);
    if (it == a.end()) {
      problems.push_back("unassigned " + op.id);
      continue;
    }
    if (op.pinned_node && *op.pinned_node != it->second) problems.push_back("pin " + op.id);
    cpu[it->second] += op.cpu_demand * input_eps / 1000.0;
    mem[it->second] += op.mem_demand;
  }
  for (const auto& n : c.nodes) {
    if (cpu[n.id] >= n.cpu_capacity) problems.push_back("cpu " + n.id);
    if (mem[n.id] > n.mem_capacity) problems.push_back("mem " + n.id);
  }
  return problems;
}

}  // namespace edgestream::oracles
