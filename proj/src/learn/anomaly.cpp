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

#include "edgestream/learn/anomaly.hpp"

#include <algorithm>
#include <cmath>

namespace edgestream::learn {

double anomaly_score(const transforms::RunningStats& stats, const Event& e) {
  double score = 0.0;
  for (const auto& [name, v] : e.values) {
    if (!is_numeric(v)) continue;
    const auto* s = stats.numeric(name);
    if (s == nullptr || s->n < AnomalyScorer::kWarmup) continue;
    const double sd = s->stddev();
    if (sd <= 0.0) continue;
    score = std::max(score, std::abs(std::get<double>(v) - s->mean) / sd);
  }
  return score;
}

double AnomalyScorer::score(const Event& e) const { return anomaly_score(stats_, e); }

double AnomalyScorer::score_and_update(const Event& e) {
  const double s = score(e);
  stats_.observe(e);
  return s;
}

AnomalyScorer AnomalyScorer::load(ByteReader& r) {
  AnomalyScorer a;
  a.stats_ = transforms::RunningStats::load(r);
  return a;
}

}  // namespace edgestream::learn
