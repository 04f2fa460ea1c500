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
#include <deque>
#include <iosfwd>
#include <vector>

#include "edgestream/core/bytes.hpp"
#include "edgestream/learn/changelog.hpp"
#include "edgestream/learn/classifier.hpp"
#include "edgestream/learn/drift.hpp"

namespace edgestream::learn {

enum class DriftPolicy { kReset, kKeep };

DriftPolicy drift_policy_from_string(std::string_view s);

struct TraceRow {
  std::uint64_t n = 0;
  double acc_window = 0.0;
  DriftLevel level = DriftLevel::kStable;
  std::size_t predicted = 0;  // class index predicted before learning

  bool operator==(const TraceRow&) const = default;
};

/// Accuracy over the most recent `window` outcomes.
class WindowAccuracy {
 public:
  explicit WindowAccuracy(std::size_t window = 1000) : window_(window) {}
  double add(bool correct);
  double value() const;

  void save(ByteWriter& w) const;
  void load(ByteReader& r);

 private:
  std::size_t window_;
  std::deque<bool> outcomes_;
  std::size_t correct_ = 0;
};

/// Test-then-train loop state.
class Prequential {
 public:
  explicit Prequential(std::size_t window = 1000, DriftPolicy policy = DriftPolicy::kReset)
      : accuracy_(window), policy_(policy) {}

  /// Predicts, scores, feeds the detector (if any), then learns.
  TraceRow step(Classifier& model, const Event& e, DriftDetector* detector = nullptr,
                ChangeLog* log = nullptr);

  void save(ByteWriter& w) const;
  void load(ByteReader& r);

 private:
  WindowAccuracy accuracy_;
  DriftPolicy policy_;
  std::uint64_t n_ = 0;
  DriftLevel last_level_ = DriftLevel::kStable;
};

struct PrequentialOptions {
  std::size_t window = 1000;
  DriftPolicy policy = DriftPolicy::kReset;
};

std::vector<TraceRow> prequential_eval(Classifier& model, const std::vector<Event>& stream,
                                       DriftDetector* detector = nullptr,
                                       PrequentialOptions options = {}, ChangeLog* log = nullptr);

/// CSV with header n,acc_window,detector_level.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace edgestream::learn
