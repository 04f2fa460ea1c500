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

#include "edgestream/learn/prequential.hpp"

#include <algorithm>
#include <ostream>

namespace edgestream::learn {

DriftPolicy drift_policy_from_string(std::string_view s) {
  if (s == "reset") return DriftPolicy::kReset;
  if (s == "keep") return DriftPolicy::kKeep;
  throw InvalidArgument("unknown drift policy '" + std::string(s) + "'");
}

double WindowAccuracy::add(bool correct) {
  outcomes_.push_back(correct);
  correct_ += correct;
  if (outcomes_.size() > window_) {
    correct_ -= outcomes_.front();
    outcomes_.pop_front();
  }
  return value();
}

double WindowAccuracy::value() const {
  return outcomes_.empty() ? 0.0
                           : static_cast<double>(correct_) / static_cast<double>(outcomes_.size());
}

void WindowAccuracy::save(ByteWriter& w) const {
  w.u64(window_);
  w.u64(outcomes_.size());
  for (bool b : outcomes_) w.boolean(b);
}

void WindowAccuracy::load(ByteReader& r) {
  window_ = r.u64();
  const std::uint64_t n = r.u64();
  if (n > r.remaining()) throw CorruptState("window accuracy length exceeds input");
  outcomes_.clear();
  correct_ = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    outcomes_.push_back(r.boolean());
    correct_ += outcomes_.back();
  }
}

void Prequential::save(ByteWriter& w) const {
  accuracy_.save(w);
  w.u8(policy_ == DriftPolicy::kReset ? 0 : 1);
  w.u64(n_);
  w.u8(static_cast<std::uint8_t>(last_level_));
}

void Prequential::load(ByteReader& r) {
  accuracy_.load(r);
  const std::uint8_t policy = r.u8();
  if (policy > 1) throw CorruptState("bad drift policy");
  policy_ = policy == 0 ? DriftPolicy::kReset : DriftPolicy::kKeep;
  n_ = r.u64();
  const std::uint8_t level = r.u8();
  if (level > 2) throw CorruptState("bad drift level");
  last_level_ = static_cast<DriftLevel>(level);
}

TraceRow Prequential::step(Classifier& model, const Event& e, DriftDetector* detector,
                           ChangeLog* log) {
  const std::size_t truth = model.class_index(e);
  const std::size_t predicted = model.predict(e).cls;
  const bool correct = predicted == truth;
  TraceRow row;
  row.predicted = predicted;
  row.n = ++n_;
  row.acc_window = accuracy_.add(correct);
  if (detector != nullptr) {
    row.level = detector->add(!correct);
    if (log != nullptr && row.level != last_level_) {
      log->append({std::max(e.ts, log->last_ts()), detector->name(), last_level_, row.level,
                   detector->statistic()});
    }
    last_level_ = row.level;
  }
  if (row.level == DriftLevel::kDrift && policy_ == DriftPolicy::kReset) model.reset();
  model.learn(e);
  return row;
}

std::vector<TraceRow> prequential_eval(Classifier& model, const std::vector<Event>& stream,
                                       DriftDetector* detector, PrequentialOptions options,
                                       ChangeLog* log) {
  Prequential p(options.window, options.policy);
  std::vector<TraceRow> trace;
  trace.reserve(stream.size());
  for (const auto& e : stream) trace.push_back(p.step(model, e, detector, log));
  return trace;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "n,acc_window,detector_level\n";
  char buf[64];
  for (const auto& r : trace) {
    std::snprintf(buf, sizeof buf, "%.6f", r.acc_window);
    out << r.n << ',' << buf << ',' << to_string(r.level) << '\n';
  }
}

}  // namespace edgestream::learn
