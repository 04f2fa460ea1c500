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

#include "edgestream/transforms/impute.hpp"

namespace edgestream::transforms {

std::optional<ImputePolicy> impute_policy_from_string(std::string_view s) {
  if (s == "mean") return ImputePolicy::kMean;
  if (s == "last_value") return ImputePolicy::kLastValue;
  if (s == "mode") return ImputePolicy::kMode;
  return std::nullopt;
}

namespace {

std::optional<Value> fill_value(const std::string& field, const RunningStats& stats, ImputePolicy policy) {
  if (const NumericStats* ns = stats.numeric(field); ns && ns->n > 0) {
    return policy == ImputePolicy::kLastValue ? ns->last : ns->mean;
  }
  if (const CategoricalStats* cs = stats.categorical(field); cs && !cs->counts.empty()) {
    if (policy == ImputePolicy::kLastValue) return cs->last;
    return *cs->mode();
  }
  return std::nullopt;
}

}  // namespace

Event impute(const Event& e, RunningStats& stats, ImputePolicy policy, ImputeCounters& counters) {
  Event out = e;
  for (auto& [name, v] : out.values) {
    if (!is_missing(v)) continue;
    if (auto fill = fill_value(name, stats, policy)) {
      v = std::move(*fill);
      ++counters.imputed;
    } else {
      ++counters.cold_starts;
    }
  }
  stats.observe(e);
  return out;
}

Event normalize(const Event& e, RunningStats& stats) {
  Event out = e;
  for (auto& [name, v] : out.values) {
    auto* x = std::get_if<double>(&v);
    if (!x) continue;
    const NumericStats* ns = stats.numeric(name);
    double z = 0.0;
    if (ns && ns->n >= 2) {
      const double sd = ns->stddev();
      if (sd > 0.0) z = (*x - ns->mean) / sd;
    }
    *x = z;
  }
  stats.observe(e);
  return out;
}

}  // namespace edgestream::transforms
