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

#include "edgestream/core/config.hpp"

#include <set>

#include "edgestream/core/error.hpp"
#include "edgestream/core/json_reader.hpp"

namespace edgestream {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

OperatorSpec operator_from_json(const json& j, const std::string& path,
                                std::vector<Violation>& out) {
  OperatorSpec op;
  ObjectReader r(j, path, out);
  r.text("id", op.id);
  std::string kind;
  r.text("kind", kind);
  if (auto k = operator_kind_from_string(kind)) {
    op.kind = *k;
  } else if (!kind.empty()) {
    r.fail("unknown-kind", kind, "unknown operator kind '" + kind + "' in " + path);
  }
  if (const json* params = r.get("params", false)) {
    if (params->is_object()) {
      op.params = *params;
    } else {
      r.fail("type", "params", "'params' in " + path + " must be an object");
    }
  }
  r.number("cpu_demand", op.cpu_demand);
  r.number("mem_demand", op.mem_demand, false);
  r.number("state_size", op.state_size, false);
  r.opt_text("pinned_node", op.pinned_node);
  op.movable = !op.pinned_node;
  r.boolean("movable", op.movable, false);
  return op;
}

}  // namespace

ordered_json to_json(const PipelineSpec& p) {
  ordered_json ops = ordered_json::array();
  for (const auto& op : p.operators) {
    ordered_json o;
    o["id"] = op.id;
    o["kind"] = std::string(to_string(op.kind));
    o["params"] = ordered_json::parse(op.params.dump());
    o["cpu_demand"] = op.cpu_demand;
    o["mem_demand"] = op.mem_demand;
    o["state_size"] = op.state_size;
    if (op.pinned_node) o["pinned_node"] = *op.pinned_node;
    o["movable"] = op.movable;
    ops.push_back(std::move(o));
  }
  ordered_json edges = ordered_json::array();
  for (const auto& e : p.edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"est_bytes_per_event", e.est_bytes_per_event}});
  }
  ordered_json out;
  out["operators"] = std::move(ops);
  out["edges"] = std::move(edges);
  out["sla"] = {{"max_p95_latency_ms", p.sla.max_p95_latency_ms},
                {"min_throughput_eps", p.sla.min_throughput_eps},
                {"max_monetary_cost", p.sla.max_monetary_cost}};
  out["seed"] = p.seed;
  return out;
}

ordered_json to_json(const ClusterSpec& c) {
  ordered_json nodes = ordered_json::array();
  for (const auto& n : c.nodes) {
    nodes.push_back({{"id", n.id},
                     {"tier", std::string(to_string(n.tier))},
                     {"cpu_capacity", n.cpu_capacity},
                     {"mem_capacity", n.mem_capacity},
                     {"power_coeff", n.power_coeff},
                     {"cost_per_cpu_hour", n.cost_per_cpu_hour}});
  }
  ordered_json links = ordered_json::array();
  for (const auto& l : c.links) {
    links.push_back({{"from", l.from},
                     {"to", l.to},
                     {"latency_ms", l.latency_ms},
                     {"bandwidth_mbps", l.bandwidth_mbps}});
  }
  ordered_json out;
  out["nodes"] = std::move(nodes);
  out["links"] = std::move(links);
  return out;
}

ordered_json to_json(const Placement& pl) {
  ordered_json a = ordered_json::object();
  for (const auto& [op, node] : pl.assignment) a[op] = node;
  return ordered_json{{"assignment", a}};
}

ordered_json to_json(const Schema& s) {
  ordered_json fields = ordered_json::array();
  for (const auto& f : s.fields) {
    ordered_json o{{"name", f.name}, {"kind", f.kind == FieldKind::kNumeric ? "numeric" : "categorical"}};
    if (f.categories) o["categories"] = *f.categories;
    fields.push_back(std::move(o));
  }
  ordered_json out{{"fields", fields}};
  if (s.label_field) out["label_field"] = *s.label_field;
  return out;
}

Parsed<PipelineSpec> pipeline_from_json(const json& j) {
  Parsed<PipelineSpec> res;
  auto& p = res.value;
  auto& out = res.violations;
  {
    ObjectReader r(j, "pipeline", out);
    if (const json* ops = r.array("operators")) {
      for (std::size_t i = 0; i < ops->size(); ++i) {
        p.operators.push_back(
            operator_from_json((*ops)[i], "pipeline.operators[" + std::to_string(i) + "]", out));
      }
    }
    if (const json* edges = r.array("edges")) {
      for (std::size_t i = 0; i < edges->size(); ++i) {
        EdgeSpec e;
        ObjectReader er((*edges)[i], "pipeline.edges[" + std::to_string(i) + "]", out);
        er.text("from", e.from);
        er.text("to", e.to);
        er.number("est_bytes_per_event", e.est_bytes_per_event, false);
        p.edges.push_back(std::move(e));
      }
    }
    if (const json* sla = r.get("sla", true)) {
      ObjectReader sr(*sla, "pipeline.sla", out);
      sr.number("max_p95_latency_ms", p.sla.max_p95_latency_ms);
      sr.number("min_throughput_eps", p.sla.min_throughput_eps);
      sr.number("max_monetary_cost", p.sla.max_monetary_cost);
    }
    if (const json* seed = r.get("seed", false)) {
      if (seed->is_number_unsigned()) {
        p.seed = seed->get<std::uint64_t>();
      } else if (seed->is_number_integer() && seed->get<std::int64_t>() >= 0) {
        p.seed = static_cast<std::uint64_t>(seed->get<std::int64_t>());
      } else {
        r.fail("type", "seed", "'seed' must be an unsigned integer");
      }
    }
  }
  return res;
}

Parsed<ClusterSpec> cluster_from_json(const json& j) {
  Parsed<ClusterSpec> res;
  auto& c = res.value;
  auto& out = res.violations;
  ObjectReader r(j, "cluster", out);
  if (const json* nodes = r.array("nodes")) {
    for (std::size_t i = 0; i < nodes->size(); ++i) {
      NodeSpec n;
      ObjectReader nr((*nodes)[i], "cluster.nodes[" + std::to_string(i) + "]", out);
      nr.text("id", n.id);
      std::string tier;
      nr.text("tier", tier);
      if (tier == "cloud") {
        n.tier = Tier::kCloud;
      } else if (tier == "edge") {
        n.tier = Tier::kEdge;
      } else if (!tier.empty()) {
        nr.fail("unknown-tier", tier, "tier must be 'cloud' or 'edge' in " + nr.path());
      }
      nr.number("cpu_capacity", n.cpu_capacity);
      nr.number("mem_capacity", n.mem_capacity);
      nr.number("power_coeff", n.power_coeff, false);
      nr.number("cost_per_cpu_hour", n.cost_per_cpu_hour, false);
      c.nodes.push_back(std::move(n));
    }
  }
  if (const json* links = r.array("links", false)) {
    for (std::size_t i = 0; i < links->size(); ++i) {
      LinkSpec l;
      ObjectReader lr((*links)[i], "cluster.links[" + std::to_string(i) + "]", out);
      lr.text("from", l.from);
      lr.text("to", l.to);
      lr.number("latency_ms", l.latency_ms);
      lr.number("bandwidth_mbps", l.bandwidth_mbps);
      c.links.push_back(std::move(l));
    }
  }
  return res;
}

Parsed<Placement> placement_from_json(const json& j) {
  Parsed<Placement> res;
  ObjectReader r(j, "placement", res.violations);
  if (const json* a = r.get("assignment", true)) {
    if (!a->is_object()) {
      r.fail("type", "assignment", "'assignment' must be an object");
    } else {
      for (const auto& [op, node] : a->items()) {
        if (!node.is_string()) {
          r.fail("type", op, "assignment of '" + op + "' must be a node id");
          continue;
        }
        res.value.assignment.emplace(op, node.get<std::string>());
      }
    }
  }
  return res;
}

Parsed<Schema> schema_from_json(const json& j) {
  Parsed<Schema> res;
  auto& out = res.violations;
  ObjectReader r(j, "schema", out);
  if (const json* fields = r.array("fields")) {
    for (std::size_t i = 0; i < fields->size(); ++i) {
      FieldSpec f;
      ObjectReader fr((*fields)[i], "schema.fields[" + std::to_string(i) + "]", out);
      fr.text("name", f.name);
      std::string kind;
      fr.text("kind", kind);
      if (kind == "numeric") {
        f.kind = FieldKind::kNumeric;
      } else if (kind == "categorical") {
        f.kind = FieldKind::kCategorical;
      } else if (!kind.empty()) {
        fr.fail("unknown-kind", kind, "field kind must be numeric or categorical");
      }
      if (const json* cats = fr.array("categories", false)) {
        std::vector<std::string> cs;
        for (const auto& c : *cats) {
          if (c.is_string()) cs.push_back(c.get<std::string>());
          else fr.fail("type", "categories", "categories must be strings");
        }
        f.categories = std::move(cs);
      }
      res.value.fields.push_back(std::move(f));
    }
  }
  r.opt_text("label_field", res.value.label_field);
  for (auto& v : validate_schema(res.value)) out.push_back(std::move(v));
  return res;
}

int line_of_key(std::string_view text, std::string_view key) {
  std::string needle = "\"" + std::string(key) + "\"";
  auto pos = text.find(needle);
  if (pos == std::string_view::npos) return 0;
  int line = 1;
  for (std::size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

Parsed<Config> parse_config(std::string_view text) {
  Parsed<Config> res;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    res.violations.push_back({"syntax", "", e.what()});
    return res;
  }
  auto& out = res.violations;
  {
    ObjectReader r(j, "config", out);
    if (const json* p = r.get("pipeline", false)) {
      auto parsed = pipeline_from_json(*p);
      for (auto& v : parsed.violations) out.push_back(std::move(v));
      res.value.pipeline = std::move(parsed.value);
    }
    if (const json* c = r.get("cluster", false)) {
      auto parsed = cluster_from_json(*c);
      for (auto& v : parsed.violations) out.push_back(std::move(v));
      res.value.cluster = std::move(parsed.value);
    }
    if (const json* g = r.get("generator", false)) res.value.generator = *g;
  }
  for (auto& v : out) {
    if (v.rule == "unknown-key") {
      if (int line = line_of_key(text, v.element); line > 0) {
        v.message = "line " + std::to_string(line) + ": " + v.message;
      }
    }
  }
  return res;
}

std::string dump_config(const Config& config) {
  ordered_json j = ordered_json::object();
  if (config.pipeline) j["pipeline"] = to_json(*config.pipeline);
  if (config.cluster) j["cluster"] = to_json(*config.cluster);
  if (config.generator) j["generator"] = ordered_json::parse(config.generator->dump());
  return j.dump(2);
}

}  // namespace edgestream
