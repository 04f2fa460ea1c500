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

EDGESTREAM_DEFINE_ERROR(DuplicateInstance);

struct LabelJoinOutput {
  std::vector<Event> labeled;
  std::vector<Event> expired;
};

/// Pairs unlabeled instances with labels that arrive later, matched on
/// instance_id. A label is accepted while label.ts < instance.ts + timeout.
/// When the watermark reaches instance.ts + timeout the instance is emitted
/// unlabeled on the expiry stream with ts set to that deadline. Every
/// instance leaves exactly once, on one of the two outputs.
class LabelJoin {
 public:
  explicit LabelJoin(std::int64_t timeout_ms);

  LabelJoinOutput on_instance(const Event& e);
  LabelJoinOutput on_label(const Event& e);
  LabelJoinOutput advance_watermark(std::int64_t wm);

  std::size_t pending() const { return pending_.size(); }
  std::uint64_t orphan_labels() const { return orphan_labels_; }

  void save(ByteWriter& w) const;
  void load(ByteReader& r);

 private:
  struct Pending {
    Event event;
    std::int64_t deadline;
  };

  Event labeled(const Event& instance, const Event& label) const;

  std::int64_t timeout_ms_;
  std::map<std::string, Pending, std::less<>> pending_;
  // Labels that arrived before their instance, keyed by instance_id.
  std::map<std::string, Event, std::less<>> early_labels_;
  std::int64_t watermark_ = std::numeric_limits<std::int64_t>::min();
  std::uint64_t orphan_labels_ = 0;
};

}  // namespace edgestream::transforms
