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

#include "edgestream/transforms/window_join.hpp"

#include <cmath>

namespace edgestream::transforms {

Event merge_joined(const Event& left, const Event& right, const std::string& right_prefix) {
  Event out;
  out.ts = std::max(left.ts, right.ts);
  out.key = left.key;
  out.values = left.values;
  for (const auto& [name, v] : right.values) {
    auto [it, inserted] = out.values.emplace(right_prefix + name, v);
    if (!inserted) throw FieldCollision("field '" + it->first + "' exists on both sides");
  }
  out.label = left.label ? left.label : right.label;
  out.instance_id = left.instance_id ? left.instance_id : right.instance_id;
  out.source = left.source;
  return out;
}

WindowJoin::WindowJoin(double delta_ms, std::string right_prefix)
    : delta_ms_(delta_ms), prefix_(std::move(right_prefix)) {
  if (!(delta_ms >= 0)) throw InvalidArgument("delta_ms must be >= 0");
}

std::vector<Event> WindowJoin::on_left(const Event& e) {
  std::vector<Event> out;
  if (auto it = right_.find(e.key); it != right_.end()) {
    const auto lo = static_cast<std::int64_t>(std::ceil(static_cast<double>(e.ts) - delta_ms_));
    for (auto r = it->second.lower_bound(lo); r != it->second.end(); ++r) {
      if (static_cast<double>(r->first - e.ts) > delta_ms_) break;
      out.push_back(merge_joined(e, r->second, prefix_));
    }
  }
  if (static_cast<double>(e.ts) >= static_cast<double>(right_wm_) - delta_ms_) {
    left_[e.key].emplace(e.ts, e);
  }
  return out;
}

std::vector<Event> WindowJoin::on_right(const Event& e) {
  std::vector<Event> out;
  if (auto it = left_.find(e.key); it != left_.end()) {
    const auto lo = static_cast<std::int64_t>(std::ceil(static_cast<double>(e.ts) - delta_ms_));
    for (auto l = it->second.lower_bound(lo); l != it->second.end(); ++l) {
      if (static_cast<double>(l->first - e.ts) > delta_ms_) break;
      out.push_back(merge_joined(l->second, e, prefix_));
    }
  }
  if (static_cast<double>(e.ts) >= static_cast<double>(left_wm_) - delta_ms_) {
    right_[e.key].emplace(e.ts, e);
  }
  return out;
}

void WindowJoin::advance_left_watermark(std::int64_t wm) {
  if (wm <= left_wm_) return;
  left_wm_ = wm;
  // Future left events have ts >= wm, so right events older than
  // wm - delta can no longer match.
  evict(right_, static_cast<double>(wm) - delta_ms_);
}

void WindowJoin::advance_right_watermark(std::int64_t wm) {
  if (wm <= right_wm_) return;
  right_wm_ = wm;
  evict(left_, static_cast<double>(wm) - delta_ms_);
}

std::size_t WindowJoin::count(const Buffer& b) {
  std::size_t n = 0;
  for (const auto& [k, m] : b) n += m.size();
  return n;
}

void WindowJoin::evict(Buffer& b, double below) {
  for (auto it = b.begin(); it != b.end();) {
    auto& m = it->second;
    while (!m.empty() && static_cast<double>(m.begin()->first) < below) m.erase(m.begin());
    it = m.empty() ? b.erase(it) : std::next(it);
  }
}

namespace {

void save_buffer(ByteWriter& w, const auto& buf) {
  std::uint32_t n = 0;
  for (const auto& [k, m] : buf) n += static_cast<std::uint32_t>(m.size());
  w.u32(n);
  for (const auto& [k, m] : buf) {
    for (const auto& [ts, e] : m) w.event(e);
  }
}

void load_buffer(ByteReader& r, auto& buf) {
  buf.clear();
  for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
    Event e = r.event();
    buf[e.key].emplace(e.ts, std::move(e));
  }
}

}  // namespace

void WindowJoin::save(ByteWriter& w) const {
  w.i64(left_wm_);
  w.i64(right_wm_);
  save_buffer(w, left_);
  save_buffer(w, right_);
}

void WindowJoin::load(ByteReader& r) {
  left_wm_ = r.i64();
  right_wm_ = r.i64();
  load_buffer(r, left_);
  load_buffer(r, right_);
}

}  // namespace edgestream::transforms
