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
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "edgestream/core/bytes.hpp"
#include "edgestream/core/error.hpp"
#include "edgestream/core/value.hpp"

namespace edgestream::transforms {

EDGESTREAM_DEFINE_ERROR(FieldCollision);

/// Merges a joined pair: left values plus right values renamed with
/// `right_prefix`; ts is the later of the two; label/instance_id/source
/// come from the left side when present.
Event merge_joined(const Event& left, const Event& right, const std::string& right_prefix = "r_");

/// Symmetric time-windowed equi-join on Event::key. A pair (l, r) joins when
/// |l.ts - r.ts| <= delta_ms. Pairs are emitted as soon as the later side
/// arrives. A side's watermark W promises no future event on that side with
/// ts < W; buffered events of the opposite side older than W - delta_ms are
/// evicted.
class WindowJoin {
 public:
  explicit WindowJoin(double delta_ms, std::string right_prefix = "r_");

  std::vector<Event> on_left(const Event& e);
  std::vector<Event> on_right(const Event& e);
  void advance_left_watermark(std::int64_t wm);
  void advance_right_watermark(std::int64_t wm);

  std::size_t buffered_left() const { return count(left_); }
  std::size_t buffered_right() const { return count(right_); }

  void save(ByteWriter& w) const;
  void load(ByteReader& r);

 private:
  using Buffer = std::map<std::string, std::multimap<std::int64_t, Event>, std::less<>>;

  static std::size_t count(const Buffer& b);
  static void evict(Buffer& b, double below);

  double delta_ms_;
  std::string prefix_;
  Buffer left_;
  Buffer right_;
  std::int64_t left_wm_ = std::numeric_limits<std::int64_t>::min();
  std::int64_t right_wm_ = std::numeric_limits<std::int64_t>::min();
};

}  // namespace edgestream::transforms
