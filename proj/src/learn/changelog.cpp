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

#include "edgestream/learn/changelog.hpp"

#include <limits>

namespace edgestream::learn {

void ChangeLog::append(ChangeEntry entry) {
  if (!entries_.empty() && entry.ts < entries_.back().ts) {
    throw InvalidArgument("change log timestamps must be non-decreasing");
  }
  entries_.push_back(std::move(entry));
}

std::int64_t ChangeLog::last_ts() const {
  return entries_.empty() ? std::numeric_limits<std::int64_t>::min() : entries_.back().ts;
}

void ChangeLog::save(ByteWriter& w) const {
  w.u32(static_cast<std::uint32_t>(entries_.size()));
  for (const auto& e : entries_) {
    w.i64(e.ts);
    w.str(e.detector);
    w.u8(static_cast<std::uint8_t>(e.from));
    w.u8(static_cast<std::uint8_t>(e.to));
    w.f64(e.statistic);
  }
}

ChangeLog ChangeLog::load(ByteReader& r) {
  ChangeLog log;
  const auto n = r.u32();
  auto level = [&r] {
    const auto l = r.u8();
    if (l > 2) throw CorruptState("bad drift level");
    return static_cast<DriftLevel>(l);
  };
  for (std::uint32_t i = 0; i < n; ++i) {
    ChangeEntry e;
    e.ts = r.i64();
    e.detector = r.str();
    e.from = level();
    e.to = level();
    e.statistic = r.f64();
    if (!log.entries_.empty() && e.ts < log.entries_.back().ts) {
      throw CorruptState("change log timestamps out of order");
    }
    log.entries_.push_back(std::move(e));
  }
  return log;
}

}  // namespace edgestream::learn
