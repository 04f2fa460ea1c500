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

#include "edgestream/orchestrate/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "edgestream/core/validate.hpp"

namespace edgestream::orchestrate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::string* assigned(const Placement& pl, const std::string& op) {
  auto it = pl.assignment.find(op);
  return it == pl.assignment.end() ? nullptr : &it->second;
}

}  // namespace

double selectivity(const OperatorSpec& op) {
  if (op.params.is_object()) {
    if (auto it = op.params.find("selectivity"); it != op.params.end() && it->is_number()) {
      return it->get<double>();
    }
    if (op.kind == OperatorKind::kReservoirSample) {
      if (auto it = op.params.find("rate"); it != op.params.end() && it->is_number()) {
        return it->get<double>();
      }
    }
  }
  return 1.0;
}

void Objective::check() const {
  for (double w : {w_lat, w_energy, w_money}) {
    if (!std::isfinite(w) || w < 0) throw InvalidArgument("objective weights must be finite and >= 0");
  }
  if (w_lat == 0 && w_energy == 0 && w_money == 0) {
    throw InvalidArgument("objective weights must not all be zero");
  }
}

double Objective::scalar(const CostEstimate& e) const {
  if (!std::isfinite(e.p95_latency_ms)) return kInf;
  return w_lat * e.p95_latency_ms + w_energy * e.energy_per_hour + w_money * e.money_per_hour;
}

Objective objective_from_string(std::string_view s) {
  Objective o;
  if (s == "latency") {
    o = {1, 0, 0};
  } else if (s == "energy") {
    o = {0, 1, 0};
  } else if (s == "money") {
    o = {0, 0, 1};
  } else if (s == "balanced") {
    o = {1, 1, 1};
  } else {
    std::istringstream in{std::string(s)};
    char c1 = 0, c2 = 0;
    if (!(in >> o.w_lat >> c1 >> o.w_energy >> c2 >> o.w_money) || c1 != ',' || c2 != ',' || !in.eof()) {
      throw InvalidArgument("objective must be latency, energy, money, balanced or 'w_lat,w_energy,w_money'");
    }
  }
  o.check();
  return o;
}

std::map<std::string, double> operator_rates(const PipelineSpec& p, double input_eps) {
  std::map<std::string, double> in, out;
  for (const auto& id : topological_order(p)) {
    const OperatorSpec& op = *p.find(id);
    const auto edges = p.in_edges(id);
    double rate = 0;
    if (edges.empty()) {
      rate = input_eps;
    } else {
      for (const EdgeSpec* e : edges) rate += out[e->from];
    }
    in[id] = rate;
    out[id] = rate * selectivity(op);
  }
  return in;
}

double cpu_used(const OperatorSpec& op, double eps_in) { return op.cpu_demand * eps_in / 1000.0; }

CostEstimate estimate_cost(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl,
                           double input_eps, const CostModel& model) {
  CostEstimate est;
  const auto rates = operator_rates(p, input_eps);
  std::map<std::string, double> used;
  for (const auto& n : c.nodes) used[n.id] = 0.0;
  for (const auto& op : p.operators) {
    if (const std::string* node = assigned(pl, op.id)) used[*node] += cpu_used(op, rates.at(op.id));
  }
  for (const auto& n : c.nodes) {
    const double u = used[n.id] / n.cpu_capacity;
    est.utilization[n.id] = u;
    if (u >= 1.0) est.infeasible_utilization.push_back(n.id);
    est.energy_per_hour += used[n.id] * n.power_coeff;
    if (n.tier == Tier::kCloud) est.money_per_hour += used[n.id] * n.cost_per_cpu_hour;
  }

  double throughput_factor = 1.0;
  std::map<std::string, double> dist;
  double worst = 0.0;
  for (const auto& id : topological_order(p)) {
    const std::string* node = assigned(pl, id);
    if (node == nullptr) continue;
    const OperatorSpec& op = *p.find(id);
    const NodeSpec* n = c.find(*node);
    if (n == nullptr) throw InvalidArgument("operator '" + id + "' is placed on unknown node '" + *node + "'");
    const double u = est.utilization[*node];
    const double base = op.cpu_demand / n->cpu_capacity;
    const double lat = u < 1.0 ? base / (1.0 - u) : kInf;
    est.op_latency_ms[id] = lat;
    if (u > 0) throughput_factor = std::min(throughput_factor, 1.0 / u);
    double upstream = 0.0;
    for (const EdgeSpec* e : p.in_edges(id)) {
      const std::string* from = assigned(pl, e->from);
      if (from == nullptr) continue;
      double edge = 0.0;
      if (*from != *node) {
        const auto link = c.link(*from, *node);
        edge = link ? link->latency_ms + e->est_bytes_per_event * 8.0 / (link->bandwidth_mbps * 1000.0)
                    : kInf;
      }
      upstream = std::max(upstream, dist[e->from] + edge);
    }
    dist[id] = upstream + lat;
    worst = std::max(worst, dist[id]);
  }
  est.p95_latency_ms = model.p95_factor * worst;
  est.throughput_eps = input_eps * throughput_factor;
  return est;
}

std::vector<std::string> infeasibility(const PipelineSpec& p, const ClusterSpec& c,
                                       const Placement& pl, const CostEstimate& e) {
  std::vector<std::string> out;
  std::map<std::string, double> mem;
  for (const auto& op : p.operators) {
    const std::string* node = assigned(pl, op.id);
    if (node == nullptr) continue;
    if (op.pinned_node && *op.pinned_node != *node) {
      out.push_back("operator " + op.id + " is pinned to " + *op.pinned_node);
    }
    mem[*node] += op.mem_demand;
  }
  for (const auto& n : c.nodes) {
    if (mem[n.id] > n.mem_capacity) out.push_back("memory exceeded on " + n.id);
    if (e.utilization.count(n.id) && e.utilization.at(n.id) >= 1.0) out.push_back("cpu overloaded on " + n.id);
  }
  if (!(e.p95_latency_ms <= p.sla.max_p95_latency_ms)) out.push_back("p95 latency above SLA");
  if (e.throughput_eps < p.sla.min_throughput_eps) out.push_back("throughput below SLA");
  if (e.money_per_hour > p.sla.max_monetary_cost) out.push_back("monetary cost above SLA");
  return out;
}

}  // namespace edgestream::orchestrate
