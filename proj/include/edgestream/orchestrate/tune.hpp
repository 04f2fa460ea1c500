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
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace edgestream::orchestrate {

struct RuntimeKnobs {
  std::uint32_t batch_size = 64;
  std::uint32_t parallelism = 1;
  std::uint32_t queue_capacity = 1024;

  bool operator==(const RuntimeKnobs&) const = default;
};

std::string to_string(const RuntimeKnobs& k);
nlohmann::ordered_json to_json(const RuntimeKnobs& k);
/// Knob grid: either an array of knob objects or an object of value lists
/// whose cartesian product is taken.
std::vector<RuntimeKnobs> knob_grid_from_json(const nlohmann::json& j);

struct BenchResult {
  double throughput_eps = 0.0;
  double p95_latency_ms = 0.0;
};

using Bench = std::function<BenchResult(const RuntimeKnobs&, std::uint64_t events)>;

struct RoundEntry {
  std::size_t candidate = 0;  // index into the candidate list
  BenchResult result;
  bool survived = false;
};

struct TuneReport {
  std::size_t winner = 0;
  RuntimeKnobs knobs;
  std::vector<std::vector<RoundEntry>> rounds;
  std::vector<std::size_t> round_sizes;  // candidates alive entering each round, ending at 1
};

/// Successive halving: each round benchmarks the survivors on
/// budget_events / rounds events and keeps the best ceil(n/2) by throughput,
/// then lower p95, then candidate index.
TuneReport tune_parameters(const std::vector<RuntimeKnobs>& candidates, std::uint64_t budget_events,
                           const Bench& bench);

}  // namespace edgestream::orchestrate
