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

#include <vector>

#include "edgestream/orchestrate/cost.hpp"

namespace edgestream::orchestrate {

EDGESTREAM_DEFINE_ERROR(PlacementInfeasible);
EDGESTREAM_DEFINE_ERROR(TooLarge);

/// Topological order; each operator is fixed on the node whose rollout is
/// cheapest, where a rollout completes the remaining operators by putting
/// them all on one node, by plain partial-cost greedy, or by that greedy
/// followed by hill climbing. Only nodes keeping the partial placement
/// feasible are candidates; ties fall back to the partial cost, then node id.
Placement place_greedy(const PipelineSpec& p, const ClusterSpec& c, const Objective& obj,
                       const CostModel& model = {});

struct LocalSearchResult {
  Placement placement;
  std::vector<double> trace;  // scalar cost after each accepted step, start first
};

/// Best-improvement hill climbing over single moves and pairwise swaps of
/// movable operators.
LocalSearchResult place_local_search(const PipelineSpec& p, const ClusterSpec& c,
                                     const Objective& obj, const Placement& start,
                                     std::size_t max_iters = 1000, const CostModel& model = {});

/// Exact optimum by enumeration; at most 8 operators and 4 nodes.
Placement place_exhaustive(const PipelineSpec& p, const ClusterSpec& c, const Objective& obj,
                           const CostModel& model = {});

}  // namespace edgestream::orchestrate
