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

#include "edgestream/core/validate.hpp"

#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "edgestream/core/error.hpp"

namespace edgestream {

std::string to_string(const Violation& v) { return v.rule + " [" + v.element + "]: " + v.message; }

namespace {

// Returns the ids left over after Kahn's algorithm (non-empty iff cyclic).
std::vector<std::string> kahn(const PipelineSpec& p, std::vector<std::string>* order) {
  std::map<std::string, int, std::less<>> indeg;
  std::map<std::string, std::vector<std::string>, std::less<>> succ;
  for (const auto& op : p.operators) indeg.emplace(op.id, 0);
  for (const auto& e : p.edges) {
    if (!indeg.contains(e.from) || !indeg.contains(e.to)) continue;
    ++indeg[e.to];
    succ[e.from].push_back(e.to);
  }
  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [id, d] : indeg) {
    if (d == 0) ready.push(id);
  }
  while (!ready.empty()) {
    std::string id = ready.top();
    ready.pop();
    for (const auto& next : succ[id]) {
      if (--indeg[next] == 0) ready.push(next);
    }
    if (order) order->push_back(std::move(id));
  }
  std::vector<std::string> remaining;
  for (const auto& [id, d] : indeg) {
    if (d > 0) remaining.push_back(id);
  }
  return remaining;
}

std::string join(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ",";
    out += id;
  }
  return out;
}

}  // namespace

std::vector<Violation> validate_pipeline(const PipelineSpec& p) {
  std::vector<Violation> out;
  std::set<std::string, std::less<>> ids;
  for (const auto& op : p.operators) {
    if (op.id.empty()) out.push_back({"empty-id", "", "operator id must be non-empty"});
    if (!ids.insert(op.id).second) {
      out.push_back({"duplicate-id", op.id, "duplicate operator id '" + op.id + "'"});
    }
    if (!(op.cpu_demand > 0) || !std::isfinite(op.cpu_demand)) {
      out.push_back({"cpu-demand", op.id, "cpu_demand must be > 0"});
    }
    if (!(op.mem_demand >= 0)) out.push_back({"mem-demand", op.id, "mem_demand must be >= 0"});
    if (!(op.state_size >= 0)) out.push_back({"state-size", op.id, "state_size must be >= 0"});
    if (op.pinned_node && op.movable) {
      out.push_back({"pinned-movable", op.id, "pinned operator must have movable=false"});
    }
    if (!op.params.is_object()) out.push_back({"params", op.id, "params must be an object"});
  }
  for (const auto& e : p.edges) {
    for (const auto* end : {&e.from, &e.to}) {
      if (!ids.contains(*end)) {
        out.push_back({"unknown-endpoint", *end, "edge endpoint '" + *end + "' is not an operator"});
      }
    }
    if (!(e.est_bytes_per_event >= 0)) {
      out.push_back({"edge-bytes", e.from + "->" + e.to, "est_bytes_per_event must be >= 0"});
    }
  }
  if (p.operators.empty()) out.push_back({"empty", "", "pipeline has no operators"});

  auto cyclic = kahn(p, nullptr);
  if (!cyclic.empty()) {
    out.push_back({"cycle", join(cyclic), "operators on or behind a cycle: " + join(cyclic)});
  } else if (!p.operators.empty()) {
    bool has_source = false;
    bool has_sink = false;
    for (const auto& op : p.operators) {
      if (p.in_edges(op.id).empty()) has_source = true;
      if (p.out_edges(op.id).empty()) has_sink = true;
    }
    if (!has_source) out.push_back({"no-source", "", "pipeline needs an operator without in-edges"});
    if (!has_sink) out.push_back({"no-sink", "", "pipeline needs an operator without out-edges"});
  }

  const auto& sla = p.sla;
  if (!(sla.max_p95_latency_ms > 0) || !(sla.min_throughput_eps > 0) ||
      !(sla.max_monetary_cost > 0)) {
    out.push_back({"sla", "sla", "all SLA bounds must be > 0"});
  }
  return out;
}

std::vector<std::string> topological_order(const PipelineSpec& p) {
  std::vector<std::string> order;
  auto cyclic = kahn(p, &order);
  if (!cyclic.empty()) throw CyclicPipeline("cycle through " + join(cyclic));
  return order;
}

std::vector<Violation> validate_cluster(const ClusterSpec& c) {
  std::vector<Violation> out;
  std::set<std::string, std::less<>> ids;
  for (const auto& n : c.nodes) {
    if (!ids.insert(n.id).second) {
      out.push_back({"duplicate-id", n.id, "duplicate node id '" + n.id + "'"});
    }
    if (!(n.cpu_capacity > 0) || !(n.mem_capacity > 0)) {
      out.push_back({"capacity", n.id, "capacities must be > 0"});
    }
    if (n.tier == Tier::kEdge && n.cost_per_cpu_hour != 0) {
      out.push_back({"edge-cost", n.id, "edge nodes must have cost_per_cpu_hour = 0"});
    }
    if (!(n.power_coeff >= 0) || !(n.cost_per_cpu_hour >= 0)) {
      out.push_back({"coefficients", n.id, "power_coeff and cost_per_cpu_hour must be >= 0"});
    }
  }
  if (c.nodes.empty()) out.push_back({"empty", "", "cluster has no nodes"});
  bool endpoints_ok = true;
  for (const auto& l : c.links) {
    for (const auto* end : {&l.from, &l.to}) {
      if (!ids.contains(*end)) {
        endpoints_ok = false;
        out.push_back({"unknown-endpoint", *end, "link endpoint '" + *end + "' is not a node"});
      }
    }
    if (!(l.latency_ms >= 0)) out.push_back({"link-latency", l.from + "-" + l.to, "latency_ms must be >= 0"});
    if (!(l.bandwidth_mbps > 0)) {
      out.push_back({"link-bandwidth", l.from + "-" + l.to, "bandwidth_mbps must be > 0"});
    }
  }
  if (endpoints_ok) {
    std::vector<std::string> sorted(ids.begin(), ids.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      for (std::size_t j = i + 1; j < sorted.size(); ++j) {
        if (!c.link(sorted[i], sorted[j])) {
          out.push_back({"connectivity", sorted[i] + "," + sorted[j],
                         "no link between '" + sorted[i] + "' and '" + sorted[j] + "'"});
        }
      }
    }
  }
  return out;
}

std::vector<Violation> validate_placement(const PipelineSpec& p, const ClusterSpec& c,
                                          const Placement& pl) {
  std::vector<Violation> out;
  for (const auto& op : p.operators) {
    auto it = pl.assignment.find(op.id);
    if (it == pl.assignment.end()) {
      out.push_back({"unplaced", op.id, "operator '" + op.id + "' has no node"});
      continue;
    }
    if (!c.find(it->second)) {
      out.push_back({"unknown-node", it->second, "operator '" + op.id + "' placed on unknown node"});
    }
    if (op.pinned_node && *op.pinned_node != it->second) {
      out.push_back({"pin", op.id, "operator '" + op.id + "' must be on '" + *op.pinned_node + "'"});
    }
  }
  for (const auto& [op, node] : pl.assignment) {
    if (!p.find(op)) out.push_back({"unknown-operator", op, "placement names unknown operator"});
  }
  return out;
}

}  // namespace edgestream
