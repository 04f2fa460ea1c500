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
#include <string>
#include <vector>

#include "edgestream/core/bytes.hpp"
#include "edgestream/learn/drift.hpp"

namespace edgestream::learn {

struct ChangeEntry {
  std::int64_t ts = 0;
  std::string detector;
  DriftLevel from = DriftLevel::kStable;
  DriftLevel to = DriftLevel::kStable;
  double statistic = 0.0;

  bool operator==(const ChangeEntry&) const = default;
};

/// Append-only record of detector level transitions.
class ChangeLog {
 public:
  /// Throws InvalidArgument if ts is older than the last entry.
  void append(ChangeEntry entry);
  const std::vector<ChangeEntry>& entries() const { return entries_; }
  std::int64_t last_ts() const;

  void save(ByteWriter& w) const;
  static ChangeLog load(ByteReader& r);

  bool operator==(const ChangeLog&) const = default;

 private:
  std::vector<ChangeEntry> entries_;
};

}  // namespace edgestream::learn
