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

#include "edgestream/orchestrate/controller.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "edgestream/core/error.hpp"

namespace edgestream::orchestrate {

namespace {

struct Candidate {
  Placement placement;
  CostEstimate estimate;
  double scalar = std::numeric_limits<double>::infinity();
};

std::optional<Candidate> try_move(const PipelineSpec& p, const ClusterSpec& c, const Objective& obj,
                                  double input_eps, const CostModel& model, const Placement& current,
                                  const std::string& op, const std::string& target, double hi) {
  Placement pl = current;
  pl.assignment[op] = target;
  CostEstimate e = estimate_cost(p, c, pl, input_eps, model);
  if (!infeasibility(p, c, pl, e).empty()) return std::nullopt;
  auto u = e.utilization.find(target);
  if (u != e.utilization.end() && u->second > hi) return std::nullopt;
  const double s = obj.scalar(e);
  return Candidate{std::move(pl), std::move(e), s};
}

std::string action_for(const ClusterSpec& c, const std::string& from, const std::string& to) {
  const Tier a = c.find(from)->tier;
  const Tier b = c.find(to)->tier;
  if (a == Tier::kEdge && b == Tier::kCloud) return "offload_to_cloud";
  if (a == Tier::kCloud && b == Tier::kEdge) return "offload_to_edge";
  return "move";
}

bool can_move(const OperatorSpec& op) { return op.movable && !op.pinned_node; }

std::string format_ms(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

ControllerState::ControllerState(ControllerConfig config) : config_(config) {
  if (!(config_.lo > 0.0) || !(config_.lo < config_.hi)) {
    throw InvalidArgument("controller thresholds need 0 < lo < hi");
  }
  if (config_.patience < 1) throw InvalidArgument("controller patience must be >= 1");
  if (config_.cooldown < 1) throw InvalidArgument("controller cooldown must be >= 1");
}

std::uint32_t ControllerState::overload_count(const std::string& node) const {
  auto it = over_.find(node);
  return it == over_.end() ? 0 : it->second;
}

std::optional<MigrationPlan> offload_step(ControllerState& cs,
                                          const std::vector<UtilizationSample>& samples,
                                          const Placement& current, const PipelineSpec& p,
                                          const ClusterSpec& c, const Objective& obj,
                                          double input_eps, const CostModel& model) {
  const ControllerConfig& cfg = cs.config_;
  if (cs.cooldown_left_ > 0) {
    --cs.cooldown_left_;
    return std::nullopt;
  }
  if (samples.empty()) return std::nullopt;
  std::uint64_t interval = 0;
  bool all_low = true;
  for (const auto& s : samples) {
    interval = std::max(interval, s.interval);
    auto armed = cs.over_armed_.try_emplace(s.node, true).first;
    if (s.cpu_util <= cfg.hi) armed->second = true;
    if (s.cpu_util > cfg.hi && armed->second) {
      ++cs.over_[s.node];
    } else {
      cs.over_[s.node] = 0;
    }
    if (s.cpu_util >= cfg.lo) {
      all_low = false;
      cs.under_armed_ = true;
    }
  }
  if (all_low && cs.under_armed_) {
    ++cs.under_;
  } else {
    cs.under_ = 0;
  }

  const CostEstimate pre = estimate_cost(p, c, current, input_eps, model);
  const double pre_scalar = obj.scalar(pre);
  std::optional<MigrationPlan> plan;

  // Overload: hottest qualifying node first.
  const UtilizationSample* hot = nullptr;
  for (const auto& s : samples) {
    if (cs.overload_count(s.node) < cfg.patience) continue;
    if (!hot || s.cpu_util > hot->cpu_util || (s.cpu_util == hot->cpu_util && s.node < hot->node)) {
      hot = &s;
    }
  }
  if (hot) {
    const auto rates = operator_rates(p, input_eps);
    const OperatorSpec* heaviest = nullptr;
    double heaviest_cpu = -1.0;
    for (const auto& op : p.operators) {
      auto a = current.assignment.find(op.id);
      if (a == current.assignment.end() || a->second != hot->node || !can_move(op)) continue;
      const double used = cpu_used(op, rates.at(op.id));
      if (used > heaviest_cpu || (used == heaviest_cpu && op.id < heaviest->id)) {
        heaviest = &op;
        heaviest_cpu = used;
      }
    }
    if (heaviest) {
      std::optional<Candidate> best;
      std::string best_node;
      std::vector<std::string> nodes;
      for (const auto& n : c.nodes) nodes.push_back(n.id);
      std::sort(nodes.begin(), nodes.end());
      for (const auto& n : nodes) {
        if (n == hot->node) continue;
        auto cand = try_move(p, c, obj, input_eps, model, current, heaviest->id, n, cfg.hi);
        if (cand && (!best || cand->scalar < best->scalar)) {
          best = std::move(cand);
          best_node = n;
        }
      }
      if (best) {
        plan = MigrationPlan{interval,   heaviest->id,      hot->node,
                             best_node,  action_for(c, hot->node, best_node),
                             pre.p95_latency_ms, best->estimate.p95_latency_ms};
      }
    }
  } else if (cs.under_ >= cfg.patience) {
    std::optional<Candidate> best;
    MigrationPlan proposal;
    std::vector<const OperatorSpec*> ops;
    for (const auto& op : p.operators) ops.push_back(&op);
    std::sort(ops.begin(), ops.end(), [](auto* a, auto* b) { return a->id < b->id; });
    std::vector<std::string> edges;
    for (const auto& n : c.nodes) {
      if (n.tier == Tier::kEdge) edges.push_back(n.id);
    }
    std::sort(edges.begin(), edges.end());
    for (const OperatorSpec* op : ops) {
      auto a = current.assignment.find(op->id);
      if (a == current.assignment.end() || !can_move(*op)) continue;
      const NodeSpec* from = c.find(a->second);
      if (!from || from->tier != Tier::kCloud) continue;
      for (const auto& n : edges) {
        auto cand = try_move(p, c, obj, input_eps, model, current, op->id, n, cfg.hi);
        if (!cand || !(cand->scalar < pre_scalar)) continue;
        if (!best || cand->scalar < best->scalar) {
          proposal = MigrationPlan{interval, op->id, from->id, n, "offload_to_edge",
                                   pre.p95_latency_ms, cand->estimate.p95_latency_ms};
          best = std::move(cand);
        }
      }
    }
    if (best) plan = std::move(proposal);
  }

  if (plan) {
    for (auto& [node, count] : cs.over_) count = 0;
    for (auto& [node, armed] : cs.over_armed_) armed = false;
    cs.under_ = 0;
    cs.under_armed_ = false;
    cs.cooldown_left_ = cfg.cooldown;
  }
  return plan;
}

void write_decisions_header(std::ostream& out) {
  out << "interval,node,action,operator,target,pre_p95_ms,post_p95_ms\n";
}

void write_decision(std::ostream& out, const MigrationPlan& plan) {
  out << plan.interval << ',' << plan.from << ',' << plan.action << ',' << plan.op << ','
      << plan.to << ',' << format_ms(plan.pre_p95_ms) << ',' << format_ms(plan.post_p95_ms)
      << '\n';
}

}  // namespace edgestream::orchestrate
