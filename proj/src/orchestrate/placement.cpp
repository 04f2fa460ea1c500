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

#include "edgestream/orchestrate/placement.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>

#include "edgestream/core/validate.hpp"

namespace edgestream::orchestrate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> sorted_nodes(const ClusterSpec& c) {
  std::vector<std::string> ids;
  for (const auto& n : c.nodes) ids.push_back(n.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

/// Scalar cost, or +inf when infeasible.
double evaluate(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl,
                const Objective& obj, const CostModel& model) {
  const CostEstimate e = estimate_cost(p, c, pl, design_load(p), model);
  if (!infeasibility(p, c, pl, e).empty()) return kInf;
  return obj.scalar(e);
}

bool can_move(const OperatorSpec& op) { return op.movable && !op.pinned_node; }

/// Plain greedy from order[from] onwards: each operator to the node with the
/// lowest partial cost. Returns nullopt when some operator fits nowhere.
std::optional<Placement> complete_greedy(const PipelineSpec& p, const ClusterSpec& c,
                                         const Objective& obj, const CostModel& model,
                                         Placement pl, const std::vector<std::string>& order,
                                         std::size_t from, const std::vector<std::string>& nodes) {
  for (std::size_t i = from; i < order.size(); ++i) {
    const OperatorSpec& op = *p.find(order[i]);
    double best = kInf;
    std::string best_node;
    for (const auto& n : nodes) {
      if (op.pinned_node && *op.pinned_node != n) continue;
      pl.assignment[op.id] = n;
      const double cost = evaluate(p, c, pl, obj, model);
      if (cost < best) {
        best = cost;
        best_node = n;
      }
    }
    if (best_node.empty()) return std::nullopt;
    pl.assignment[op.id] = best_node;
  }
  return pl;
}

LocalSearchResult hill_climb(const PipelineSpec& p, const ClusterSpec& c, const Objective& obj,
                             const Placement& start, std::size_t max_iters, const CostModel& model,
                             const std::set<std::string>& frozen) {
  const auto nodes = sorted_nodes(c);
  std::vector<std::string> movable;
  for (const auto& op : p.operators) {
    if (can_move(op) && !frozen.count(op.id)) movable.push_back(op.id);
  }
  std::sort(movable.begin(), movable.end());
  LocalSearchResult res{start, {evaluate(p, c, start, obj, model)}};
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    double best = res.trace.back();
    Placement best_pl;
    auto consider = [&](const Placement& cand) {
      const double cost = evaluate(p, c, cand, obj, model);
      if (cost < best) {
        best = cost;
        best_pl = cand;
      }
    };
    for (const auto& op : movable) {
      const std::string current = res.placement.node_of(op);
      for (const auto& n : nodes) {
        if (n == current) continue;
        Placement cand = res.placement;
        cand.assignment[op] = n;
        consider(cand);
      }
    }
    for (std::size_t i = 0; i < movable.size(); ++i) {
      for (std::size_t j = i + 1; j < movable.size(); ++j) {
        const std::string a = res.placement.node_of(movable[i]);
        const std::string b = res.placement.node_of(movable[j]);
        if (a == b) continue;
        Placement cand = res.placement;
        cand.assignment[movable[i]] = b;
        cand.assignment[movable[j]] = a;
        consider(cand);
      }
    }
    if (best_pl.assignment.empty()) break;
    res.placement = std::move(best_pl);
    res.trace.push_back(best);
  }
  return res;
}

constexpr std::size_t kRolloutIters = 50;

}  // namespace

Placement place_greedy(const PipelineSpec& p, const ClusterSpec& c, const Objective& obj,
                       const CostModel& model) {
  obj.check();
  const auto nodes = sorted_nodes(c);
  const auto order = topological_order(p);
  Placement pl;
  std::set<std::string> fixed;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::string& id = order[i];
    const OperatorSpec& op = *p.find(id);
    fixed.insert(id);
    std::pair<double, double> best{kInf, kInf};
    std::string best_node;
    for (const auto& n : nodes) {
      if (op.pinned_node && *op.pinned_node != n) continue;
      pl.assignment[id] = n;
      const double partial = evaluate(p, c, pl, obj, model);
      if (partial == kInf) continue;
      double ahead = kInf;
      for (const auto& m : nodes) {
        Placement rest = pl;
        for (std::size_t j = i + 1; j < order.size(); ++j) {
          const OperatorSpec& later = *p.find(order[j]);
          rest.assignment[later.id] = later.pinned_node ? *later.pinned_node : m;
        }
        ahead = std::min(ahead, evaluate(p, c, rest, obj, model));
      }
      if (auto rest = complete_greedy(p, c, obj, model, pl, order, i + 1, nodes)) {
        ahead = std::min(ahead, evaluate(p, c, *rest, obj, model));
        ahead = std::min(ahead, hill_climb(p, c, obj, *rest, kRolloutIters, model, fixed).trace.back());
      }
      const std::pair<double, double> cost{ahead, partial};
      if (cost < best) {
        best = cost;
        best_node = n;
      }
    }
    if (best_node.empty()) {
      throw PlacementInfeasible("no feasible node for operator '" + id + "'");
    }
    pl.assignment[id] = best_node;
  }
  return pl;
}

LocalSearchResult place_local_search(const PipelineSpec& p, const ClusterSpec& c,
                                     const Objective& obj, const Placement& start,
                                     std::size_t max_iters, const CostModel& model) {
  obj.check();
  return hill_climb(p, c, obj, start, max_iters, model, {});
}

Placement place_exhaustive(const PipelineSpec& p, const ClusterSpec& c, const Objective& obj,
                           const CostModel& model) {
  obj.check();
  if (p.operators.size() > 8 || c.nodes.size() > 4) {
    throw TooLarge("exhaustive placement is limited to 8 operators and 4 nodes");
  }
  const auto nodes = sorted_nodes(c);
  std::vector<std::string> ops;
  for (const auto& op : p.operators) ops.push_back(op.id);
  std::sort(ops.begin(), ops.end());
  std::vector<std::vector<std::string>> choices;
  for (const auto& id : ops) {
    const OperatorSpec& op = *p.find(id);
    if (op.pinned_node) {
      choices.push_back({*op.pinned_node});
    } else {
      choices.push_back(nodes);
    }
  }
  std::vector<std::size_t> idx(ops.size(), 0);
  double best = kInf;
  Placement best_pl;
  // Odometer over assignments in lexicographic order (first operator most significant).
  auto advance = [&] {
    for (std::size_t k = ops.size(); k-- > 0;) {
      if (++idx[k] < choices[k].size()) return true;
      idx[k] = 0;
    }
    return false;
  };
  do {
    Placement pl;
    for (std::size_t i = 0; i < ops.size(); ++i) pl.assignment[ops[i]] = choices[i][idx[i]];
    const double cost = evaluate(p, c, pl, obj, model);
    if (cost < best) {
      best = cost;
      best_pl = std::move(pl);
    }
  } while (advance());
  if (best_pl.assignment.empty() && !ops.empty()) {
    throw PlacementInfeasible("no feasible placement exists");
  }
  return best_pl;
}

}  // namespace edgestream::orchestrate
