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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "edgestream/core/bytes.hpp"
#include "edgestream/core/value.hpp"

namespace edgestream::transforms {

/// Mergeable per-field aggregate.
struct FieldSummary {
  std::uint64_t count = 0;
  double sum = 0.0;
  double min = 0.0;
  double max = 0.0;

  void add(double x);
  void merge(const FieldSummary& other);
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }

  bool operator==(const FieldSummary&) const = default;
};

struct WindowSummary {
  std::string key;
  std::int64_t window_start = 0;
  std::int64_t window_end = 0;
  std::uint64_t events = 0;
  std::map<std::string, FieldSummary> fields;

  void merge(const WindowSummary& other);
  /// Summary event: ts = window end; values "count" plus, per numeric field
  /// f, "f.count", "f.mean", "f.min", "f.max".
  Event to_event() const;

  bool operator==(const WindowSummary&) const = default;
};

/// Reconstructs a WindowSummary from a summary event, for cloud-side merging.
WindowSummary summary_from_event(const Event& e, std::int64_t window_ms);

/// Tumbling-window summarization per key. Windows are [m*w, (m+1)*w) and
/// are emitted once the watermark reaches their end.
class Summarizer {
 public:
  explicit Summarizer(std::int64_t window_ms);

  void add(const Event& e);
  /// Closed windows ordered by (window end, key).
  std::vector<WindowSummary> advance_watermark(std::int64_t wm);
  std::vector<WindowSummary> flush();

  std::int64_t window_ms() const { return window_ms_; }

  void save(ByteWriter& w) const;
  void load(ByteReader& r);

 private:
  std::int64_t window_ms_;
  // (window_start, key) -> open summary
  std::map<std::pair<std::int64_t, std::string>, WindowSummary> open_;
};

/// Merges per-partition summaries of the same (key, window) into one list
/// ordered by (window end, key).
std::vector<WindowSummary> merge_summaries(const std::vector<std::vector<WindowSummary>>& parts);

}  // namespace edgestream::transforms
