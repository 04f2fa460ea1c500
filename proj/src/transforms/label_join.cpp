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

#include "edgestream/transforms/label_join.hpp"

#include <algorithm>

namespace edgestream::transforms {

LabelJoin::LabelJoin(std::int64_t timeout_ms) : timeout_ms_(timeout_ms) {
  if (timeout_ms <= 0) throw InvalidArgument("timeout_ms must be > 0");
}

Event LabelJoin::labeled(const Event& instance, const Event& label) const {
  Event out = instance;
  out.label = label.label;
  out.ts = std::max(instance.ts, label.ts);
  return out;
}

LabelJoinOutput LabelJoin::on_instance(const Event& e) {
  if (!e.instance_id) throw InvalidArgument("instance event without instance_id");
  const std::string& id = *e.instance_id;
  if (pending_.contains(id)) throw DuplicateInstance("instance_id '" + id + "' already pending");
  LabelJoinOutput out;
  const std::int64_t deadline = e.ts + timeout_ms_;
  if (auto it = early_labels_.find(id); it != early_labels_.end()) {
    Event label = std::move(it->second);
    early_labels_.erase(it);
    if (label.ts < deadline) {
      out.labeled.push_back(labeled(e, label));
      return out;
    }
    ++orphan_labels_;
  }
  if (watermark_ >= deadline) {
    Event expired = e;
    expired.ts = deadline;
    out.expired.push_back(std::move(expired));
    return out;
  }
  pending_.emplace(id, Pending{e, deadline});
  return out;
}

LabelJoinOutput LabelJoin::on_label(const Event& e) {
  if (!e.instance_id || !e.label) throw InvalidArgument("label event needs instance_id and label");
  LabelJoinOutput out;
  auto it = pending_.find(*e.instance_id);
  if (it == pending_.end()) {
    // Either the instance has not arrived yet or it already left.
    if (!early_labels_.contains(*e.instance_id)) {
      early_labels_.emplace(*e.instance_id, e);
    } else {
      ++orphan_labels_;
    }
    return out;
  }
  if (e.ts < it->second.deadline) {
    out.labeled.push_back(labeled(it->second.event, e));
    pending_.erase(it);
  } else {
    ++orphan_labels_;
  }
  return out;
}

LabelJoinOutput LabelJoin::advance_watermark(std::int64_t wm) {
  LabelJoinOutput out;
  if (wm <= watermark_) return out;
  watermark_ = wm;
  std::vector<std::pair<std::int64_t, std::string>> due;
  for (const auto& [id, p] : pending_) {
    if (p.deadline <= wm) due.emplace_back(p.deadline, id);
  }
  std::sort(due.begin(), due.end());
  for (const auto& [deadline, id] : due) {
    auto it = pending_.find(id);
    Event expired = std::move(it->second.event);
    expired.ts = deadline;
    out.expired.push_back(std::move(expired));
    pending_.erase(it);
  }
  // A buffered early label can only match an instance with ts > label.ts - timeout.
  for (auto it = early_labels_.begin(); it != early_labels_.end();) {
    if (it->second.ts + timeout_ms_ <= wm) {
      ++orphan_labels_;
      it = early_labels_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

void LabelJoin::save(ByteWriter& w) const {
  w.i64(watermark_);
  w.u64(orphan_labels_);
  w.u32(static_cast<std::uint32_t>(pending_.size()));
  for (const auto& [id, p] : pending_) {
    w.event(p.event);
    w.i64(p.deadline);
  }
  w.u32(static_cast<std::uint32_t>(early_labels_.size()));
  for (const auto& [id, e] : early_labels_) w.event(e);
}

void LabelJoin::load(ByteReader& r) {
  watermark_ = r.i64();
  orphan_labels_ = r.u64();
  pending_.clear();
  for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
    Event e = r.event();
    const std::int64_t deadline = r.i64();
    std::string id = *e.instance_id;
    pending_.emplace(std::move(id), Pending{std::move(e), deadline});
  }
  early_labels_.clear();
  for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
    Event e = r.event();
    std::string id = *e.instance_id;
    early_labels_.emplace(std::move(id), std::move(e));
  }
}

}  // namespace edgestream::transforms
