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

#include "edgestream/transforms/summarize.hpp"

#include <algorithm>
#include <tuple>

#include "edgestream/core/error.hpp"

namespace edgestream::transforms {

void FieldSummary::add(double x) {
  if (count == 0) {
    min = max = x;
  } else {
    min = std::min(min, x);
    max = std::max(max, x);
  }
  ++count;
  sum += x;
}

void FieldSummary::merge(const FieldSummary& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  count += other.count;
  sum += other.sum;
  min = std::min(min, other.min);
  max = std::max(max, other.max);
}

void WindowSummary::merge(const WindowSummary& other) {
  events += other.events;
  for (const auto& [f, s] : other.fields) fields[f].merge(s);
}

Event WindowSummary::to_event() const {
  Event e;
  e.ts = window_end;
  e.key = key;
  e.values.emplace("count", static_cast<double>(events));
  for (const auto& [f, s] : fields) {
    e.values.emplace(f + ".count", static_cast<double>(s.count));
    e.values.emplace(f + ".mean", s.mean());
    e.values.emplace(f + ".min", s.min);
    e.values.emplace(f + ".max", s.max);
  }
  return e;
}

WindowSummary summary_from_event(const Event& e, std::int64_t window_ms) {
  WindowSummary s;
  s.key = e.key;
  s.window_end = e.ts;
  s.window_start = e.ts - window_ms;
  auto num = [&e](const std::string& name) {
    auto it = e.values.find(name);
    if (it == e.values.end() || !is_numeric(it->second)) {
      throw InvalidArgument("summary event lacks numeric '" + name + "'");
    }
    return std::get<double>(it->second);
  };
  s.events = static_cast<std::uint64_t>(num("count"));
  for (const auto& [name, v] : e.values) {
    const auto dot = name.rfind(".count");
    if (dot == std::string::npos || dot + 6 != name.size()) continue;
    const std::string f = name.substr(0, dot);
    FieldSummary fs;
    fs.count = static_cast<std::uint64_t>(num(name));
    fs.sum = num(f + ".mean") * static_cast<double>(fs.count);
    fs.min = num(f + ".min");
    fs.max = num(f + ".max");
    s.fields.emplace(f, fs);
  }
  return s;
}

Summarizer::Summarizer(std::int64_t window_ms) : window_ms_(window_ms) {
  if (window_ms <= 0) throw InvalidArgument("window_ms must be > 0");
}

void Summarizer::add(const Event& e) {
  const std::int64_t start = (e.ts / window_ms_) * window_ms_;
  auto [it, inserted] = open_.try_emplace({start, e.key});
  WindowSummary& s = it->second;
  if (inserted) {
    s.key = e.key;
    s.window_start = start;
    s.window_end = start + window_ms_;
  }
  ++s.events;
  for (const auto& [name, v] : e.values) {
    if (const auto* x = std::get_if<double>(&v)) s.fields[name].add(*x);
  }
}

std::vector<WindowSummary> Summarizer::advance_watermark(std::int64_t wm) {
  std::vector<WindowSummary> out;
  // Keys are ordered by window start, so closed windows form a prefix.
  while (!open_.empty() && open_.begin()->second.window_end <= wm) {
    out.push_back(std::move(open_.begin()->second));
    open_.erase(open_.begin());
  }
  return out;
}

std::vector<WindowSummary> Summarizer::flush() {
  std::vector<WindowSummary> out;
  for (auto& [k, s] : open_) out.push_back(std::move(s));
  open_.clear();
  return out;
}

void Summarizer::save(ByteWriter& w) const {
  w.u32(static_cast<std::uint32_t>(open_.size()));
  for (const auto& [k, s] : open_) {
    w.str(s.key);
    w.i64(s.window_start);
    w.i64(s.window_end);
    w.u64(s.events);
    w.u32(static_cast<std::uint32_t>(s.fields.size()));
    for (const auto& [f, fs] : s.fields) {
      w.str(f);
      w.u64(fs.count);
      w.f64(fs.sum);
      w.f64(fs.min);
      w.f64(fs.max);
    }
  }
}

void Summarizer::load(ByteReader& r) {
  open_.clear();
  for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
    WindowSummary s;
    s.key = r.str();
    s.window_start = r.i64();
    s.window_end = r.i64();
    s.events = r.u64();
    for (std::uint32_t j = 0, m = r.u32(); j < m; ++j) {
      std::string f = r.str();
      FieldSummary fs;
      fs.count = r.u64();
      fs.sum = r.f64();
      fs.min = r.f64();
      fs.max = r.f64();
      s.fields.emplace(std::move(f), fs);
    }
    open_.emplace(std::make_pair(s.window_start, s.key), std::move(s));
  }
}

std::vector<WindowSummary> merge_summaries(const std::vector<std::vector<WindowSummary>>& parts) {
  std::map<std::pair<std::int64_t, std::string>, WindowSummary> merged;
  for (const auto& part : parts) {
    for (const auto& s : part) {
      auto [it, inserted] = merged.try_emplace({s.window_end, s.key}, s);
      if (!inserted) it->second.merge(s);
    }
  }
  std::vector<WindowSummary> out;
  out.reserve(merged.size());
  for (auto& [k, s] : merged) out.push_back(std::move(s));
  return out;
}

}  // namespace edgestream::transforms
