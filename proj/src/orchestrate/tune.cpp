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

#include "edgestream/orchestrate/tune.hpp"

#include <algorithm>
#include <cmath>

#include "edgestream/core/error.hpp"

namespace edgestream::orchestrate {

std::string to_string(const RuntimeKnobs& k) {
  return "batch_size=" + std::to_string(k.batch_size) + " parallelism=" +
         std::to_string(k.parallelism) + " queue_capacity=" + std::to_string(k.queue_capacity);
}

nlohmann::ordered_json to_json(const RuntimeKnobs& k) {
  return {{"batch_size", k.batch_size},
          {"parallelism", k.parallelism},
          {"queue_capacity", k.queue_capacity}};
}

namespace {

std::uint32_t knob_value(const nlohmann::json& v, const char* name) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0 ||
      v.get<std::uint64_t>() > 0xffffffffu) {
    throw InvalidArgument(std::string("knob '") + name + "' must be a positive integer");
  }
  return v.get<std::uint32_t>();
}

std::vector<std::uint32_t> knob_values(const nlohmann::json& j, const char* name,
                                       std::uint32_t fallback) {
  if (!j.contains(name)) return {fallback};
  const auto& v = j.at(name);
  if (!v.is_array()) return {knob_value(v, name)};
  if (v.empty()) throw InvalidArgument(std::string("knob '") + name + "' has no values");
  std::vector<std::uint32_t> out;
  for (const auto& x : v) out.push_back(knob_value(x, name));
  return out;
}

void check_keys(const nlohmann::json& j) {
  for (const auto& [key, _] : j.items()) {
    if (key != "batch_size" && key != "parallelism" && key != "queue_capacity") {
      throw InvalidArgument("unknown knob '" + key + "'");
    }
  }
}

}  // namespace

std::vector<RuntimeKnobs> knob_grid_from_json(const nlohmann::json& j) {
  const RuntimeKnobs d;
  std::vector<RuntimeKnobs> out;
  if (j.is_array()) {
    for (const auto& item : j) {
      if (!item.is_object()) throw InvalidArgument("knob list entries must be objects");
      check_keys(item);
      RuntimeKnobs k;
      if (item.contains("batch_size")) k.batch_size = knob_value(item["batch_size"], "batch_size");
      if (item.contains("parallelism")) k.parallelism = knob_value(item["parallelism"], "parallelism");
      if (item.contains("queue_capacity")) {
        k.queue_capacity = knob_value(item["queue_capacity"], "queue_capacity");
      }
      out.push_back(k);
    }
  } else if (j.is_object()) {
    check_keys(j);
    for (auto b : knob_values(j, "batch_size", d.batch_size)) {
      for (auto p : knob_values(j, "parallelism", d.parallelism)) {
        for (auto q : knob_values(j, "queue_capacity", d.queue_capacity)) {
          out.push_back({b, p, q});
        }
      }
    }
  } else {
    throw InvalidArgument("knob grid must be an array or an object");
  }
  if (out.empty()) throw InvalidArgument("knob grid is empty");
  return out;
}

TuneReport tune_parameters(const std::vector<RuntimeKnobs>& candidates, std::uint64_t budget_events,
                           const Bench& bench) {
  if (candidates.empty()) throw InvalidArgument("tune_parameters needs at least one candidate");
  TuneReport report;
  std::vector<std::size_t> alive(candidates.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  std::size_t rounds = 0;
  while ((std::size_t{1} << rounds) < candidates.size()) ++rounds;
  const std::uint64_t per_round = rounds == 0 ? 0 : std::max<std::uint64_t>(1, budget_events / rounds);
  report.round_sizes.push_back(alive.size());
  while (alive.size() > 1) {
    std::vector<RoundEntry> entries;
    for (std::size_t idx : alive) entries.push_back({idx, bench(candidates[idx], per_round), false});
    std::vector<std::size_t> order(entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& x = entries[a];
      const auto& y = entries[b];
      if (x.result.throughput_eps != y.result.throughput_eps) {
        return x.result.throughput_eps > y.result.throughput_eps;
      }
      if (x.result.p95_latency_ms != y.result.p95_latency_ms) {
        return x.result.p95_latency_ms < y.result.p95_latency_ms;
      }
      return x.candidate < y.candidate;
    });
    const std::size_t keep = (alive.size() + 1) / 2;
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < keep; ++i) {
      entries[order[i]].survived = true;
      next.push_back(entries[order[i]].candidate);
    }
    std::sort(next.begin(), next.end());
    alive = std::move(next);
    report.rounds.push_back(std::move(entries));
    report.round_sizes.push_back(alive.size());
  }
  report.winner = alive.front();
  report.knobs = candidates[report.winner];
  return report;
}

}  // namespace edgestream::orchestrate
