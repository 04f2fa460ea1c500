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
#include <optional>
#include <string_view>

#include "edgestream/transforms/running_stats.hpp"

namespace edgestream::transforms {

/// mean: numeric mean, categorical mode. last_value: most recent observed
/// value of either kind. mode: categorical mode; numeric fields fall back to
/// the mean.
enum class ImputePolicy { kMean, kLastValue, kMode };

std::optional<ImputePolicy> impute_policy_from_string(std::string_view s);

struct ImputeCounters {
  std::uint64_t imputed = 0;
  std::uint64_t cold_starts = 0;  // missing values left intact for lack of history
};

/// Replaces missing markers per `policy` using history in `stats`, then
/// updates `stats` with the original non-missing values of `e`.
Event impute(const Event& e, RunningStats& stats, ImputePolicy policy, ImputeCounters& counters);

/// Causal z-score normalization: numeric fields become (x - mean)/std
/// computed from `stats` before `e` is incorporated; 0 when n < 2 or
/// std = 0. Categorical and missing values pass through.
Event normalize(const Event& e, RunningStats& stats);

}  // namespace edgestream::transforms
