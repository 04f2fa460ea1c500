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

#include "edgestream/transforms/running_stats.hpp"

namespace edgestream::learn {

/// Running z-score anomaly scorer.
class AnomalyScorer {
 public:
  static constexpr std::uint64_t kWarmup = 30;

  /// max over numeric fields of |x - mean| / std under the current stats.
  double score(const Event& e) const;
  /// Scores, then folds e into the stats.
  double score_and_update(const Event& e);

  const transforms::RunningStats& stats() const { return stats_; }

  void save(ByteWriter& w) const { stats_.save(w); }
  static AnomalyScorer load(ByteReader& r);

  bool operator==(const AnomalyScorer&) const = default;

 private:
  transforms::RunningStats stats_;
};

double anomaly_score(const transforms::RunningStats& stats, const Event& e);

}  // namespace edgestream::learn
