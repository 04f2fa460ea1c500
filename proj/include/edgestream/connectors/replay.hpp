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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>

#include "edgestream/core/value.hpp"

namespace edgestream::connectors {

/// Paces emissions to a target rate against the steady clock. Emission i is
/// released no earlier than start + i / rate, so the long-run rate does not
/// drift when individual sleeps overshoot. A rate of 0 never waits.
class RatePacer {
 public:
  explicit RatePacer(double rate_eps);

  void wait_next();

  std::uint64_t emitted() const { return emitted_; }
  double elapsed_seconds() const;

 private:
  double rate_eps_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t emitted_ = 0;
};

struct ReplayReport {
  std::uint64_t count = 0;
  double elapsed_s = 0.0;
  double achieved_eps = 0.0;
};

/// Sink callback; may block to apply backpressure.
using EventSink = std::function<void(const Event&)>;

/// Emits the events of a text-record file in file order at `rate_eps`
/// (0 = as fast as possible).
ReplayReport replay(const std::filesystem::path& file, double rate_eps, const EventSink& sink);

}  // namespace edgestream::connectors
