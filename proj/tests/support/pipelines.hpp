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

// Pipelines, clusters and streams shared by the runtime, CLI and acceptance tests.

#include <string>
#include <vector>

#include <json.hpp>

#include "edgestream/core/cluster.hpp"
#include "edgestream/core/config.hpp"
#include "edgestream/core/pipeline.hpp"
#include "edgestream/core/rng.hpp"
#include "edgestream/generate/generator.hpp"
#include "edgestream/orchestrate/cost.hpp"

namespace edgestream::testkit {

using nlohmann::json;

/// e1, e2 (edge, 2 CPU) and c1 (cloud, 8 CPU), fully linked.
inline ClusterSpec three_node_cluster() {
  auto parsed = cluster_from_json(json::parse(R"({
    "nodes": [
      {"id": "c1", "tier": "cloud", "cpu_capacity": 8, "mem_capacity": 4096, "power_coeff": 2, "cost_per_cpu_hour": 0.5},
      {"id": "e1", "tier": "edge", "cpu_capacity": 2, "mem_capacity": 512, "power_coeff": 1},
      {"id": "e2", "tier": "edge", "cpu_capacity": 2, "mem_capacity": 512, "power_coeff": 1}
    ],
    "links": [
      {"from": "e1", "to": "c1", "latency_ms": 10, "bandwidth_mbps": 100},
      {"from": "e2", "to": "c1", "latency_ms": 12, "bandwidth_mbps": 100},
      {"from": "e1", "to": "e2", "latency_ms": 1, "bandwidth_mbps": 1000}
    ]})"));
  return parsed.value;
}

/// Operators given as {"id", "kind", "params"...} objects; edges as [from, to] pairs.
inline PipelineSpec make_pipeline(json ops, const std::vector<std::pair<std::string, std::string>>& edges,
                                  std::uint64_t seed = 7, double eps = 200) {
  json j{{"operators", json::array()}, {"edges", json::array()}, {"seed", seed}};
  for (auto& op : ops) {
    if (!op.contains("cpu_demand")) op["cpu_demand"] = 1.0;
    if (!op.contains("mem_demand")) op["mem_demand"] = 16.0;
    if (!op.contains("state_size")) op["state_size"] = 1.0;
    j["operators"].push_back(op);
  }
  for (const auto& [from, to] : edges) j["edges"].push_back({{"from", from}, {"to", to}, {"est_bytes_per_event", 200}});
  j["sla"] = {{"max_p95_latency_ms", 1e6}, {"min_throughput_eps", eps}, {"max_monetary_cost", 1e6}};
  auto parsed = pipeline_from_json(j);
  if (!parsed.ok()) throw std::runtime_error("bad test pipeline: " + to_string(parsed.violations.front()));
  return parsed.value;
}

inline json op(const std::string& id, const std::string& kind, json params = json::object()) {
  return json{{"id", id}, {"kind", kind}, {"params", std::move(params)}};
}

/// Linear pipeline through the given operators, in order.
inline PipelineSpec chain(std::vector<json> ops, std::uint64_t seed = 7) {
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
    edges.emplace_back(ops[i]["id"].get<std::string>(), ops[i + 1]["id"].get<std::string>());
  }
  return make_pipeline(json(std::move(ops)), edges, seed);
}

inline json tree_params(json extra = json::object()) {
  json p{{"classes", {"0", "1"}}, {"n_min", 100}, {"delta", 1e-5}};
  for (auto& [k, v] : extra.items()) p[k] = v;
  return p;
}

/// Labeled hyperplane stream with ts = i.
inline std::vector<Event> hyperplane(std::uint64_t n, std::uint32_t d, std::uint64_t seed,
                                     std::optional<std::uint64_t> drift_at = std::nullopt,
                                     double noise = 0.05) {
  generate::GeneratorSpec spec;
  spec.kind = generate::GeneratorKind::kHyperplane;
  spec.d = d;
  spec.noise_prob = noise;
  spec.seed = seed;
  if (drift_at) spec.schedule.push_back({*drift_at, generate::DriftKind::kAbrupt, 0, std::nullopt});
  auto g = generate::make_generator(spec);
  return generate::take(*g, n);
}

/// Every placement that passes pins, capacity and SLA at the design load.
inline std::vector<Placement> feasible_placements(const PipelineSpec& p, const ClusterSpec& c) {
  std::vector<Placement> out;
  const std::size_t n = p.operators.size(), m = c.nodes.size();
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    Placement pl;
    for (std::size_t i = 0; i < n; ++i) pl.assignment[p.operators[i].id] = c.nodes[digit[i]].id;
    auto est = orchestrate::estimate_cost(p, c, pl, orchestrate::design_load(p));
    if (orchestrate::infeasibility(p, c, pl, est).empty()) out.push_back(pl);
    std::size_t k = 0;
    while (k < n && ++digit[k] == m) digit[k++] = 0;
    if (k == n) break;
  }
  return out;
}

/// Random source -> 1..4 operators -> sink pipeline, sometimes branching
/// into two sinks. Stateful learners only ever sit on a chain.
inline PipelineSpec random_pipeline(std::uint64_t seed) {
  Rng rng(seed);
  static const std::vector<std::pair<std::string, json>> kinds{
      {"identity", json::object()},
      {"normalize", json::object()},
      {"impute", json::object()},
      {"hash_project", {{"d", 4}}},
      {"reservoir_sample", {{"rate", 0.5}}},
      {"hoeffding_tree", tree_params()},
      {"kmeans", {{"k", 3}}},
      {"anomaly", json::object()},
      {"summarize", {{"window_ms", 250}}},
  };
  std::vector<json> ops{op("src", "source")};
  const std::size_t middle = 1 + rng.below(4);
  for (std::size_t i = 0; i < middle; ++i) {
    const auto& [kind, params] = kinds[rng.below(kinds.size())];
    json o = op("op" + std::to_string(i) + "_" + kind, kind, params);
    o["cpu_demand"] = rng.uniform(0.5, 2.0);
    ops.push_back(std::move(o));
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
    edges.emplace_back(ops[i]["id"].get<std::string>(), ops[i + 1]["id"].get<std::string>());
  }
  const std::string last = ops.back()["id"].get<std::string>();
  ops.push_back(op("sink", "sink"));
  edges.emplace_back(last, "sink");
  if (ops.size() < 6 && rng.bernoulli(0.5)) {
    ops.push_back(op("tap", "sink"));
    edges.emplace_back(ops[1]["id"].get<std::string>(), "tap");
  }
  return make_pipeline(json(std::move(ops)), edges, seed);
}

/// Edge overload script: src and heavy on e1 at 850 events/s (utilization
/// about 0.6), then 2000 events/s from t = 4 s (about 1.4).
struct OverloadScenario {
  PipelineSpec pipeline;
  Placement placement;
  json workload;
};

inline OverloadScenario overload_scenario() {
  json src = op("src", "source");
  src["cpu_demand"] = 0.2;
  src["pinned_node"] = "e1";
  json heavy = op("heavy", "normalize");
  heavy["cpu_demand"] = 1.2;
  json sink = op("sink", "sink");
  sink["cpu_demand"] = 0.2;
  OverloadScenario s;
  s.pipeline = make_pipeline(json::array({src, heavy, sink}), {{"src", "heavy"}, {"heavy", "sink"}}, 11, 850);
  s.placement.assignment = {{"src", "e1"}, {"heavy", "e1"}, {"sink", "c1"}};
  s.workload = json::parse(R"([{"at_s": 0, "eps": 850}, {"at_s": 4, "eps": 2000}])");
  return s;
}

}  // namespace edgestream::testkit
