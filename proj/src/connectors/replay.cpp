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

#include "edgestream/connectors/replay.hpp"

#include <thread>

#include "edgestream/connectors/io.hpp"
#include "edgestream/core/error.hpp"

namespace edgestream::connectors {

RatePacer::RatePacer(double rate_eps) : rate_eps_(rate_eps), start_(std::chrono::steady_clock::now()) {
  if (!(rate_eps >= 0)) throw InvalidArgument("rate_eps must be >= 0");
}

void RatePacer::wait_next() {
  if (rate_eps_ > 0) {
    const auto due = start_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                  std::chrono::duration<double>(static_cast<double>(emitted_) / rate_eps_));
    std::this_thread::sleep_until(due);
  }
  ++emitted_;
}

double RatePacer::elapsed_seconds() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

ReplayReport replay(const std::filesystem::path& file, double rate_eps, const EventSink& sink) {
  FileSource src(file);
  RatePacer pacer(rate_eps);
  ReplayReport report;
  while (auto e = src.next()) {
    pacer.wait_next();
    sink(*e);
    ++report.count;
  }
  // The final interval is counted so that n events at rate r take n/r seconds.
  if (rate_eps > 0 && report.count > 0) {
    pacer.wait_next();
  }
  report.elapsed_s = pacer.elapsed_seconds();
  report.achieved_eps = report.elapsed_s > 0 ? static_cast<double>(report.count) / report.elapsed_s : 0.0;
  return report;
}

}  // namespace edgestream::connectors
