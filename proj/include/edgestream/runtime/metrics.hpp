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
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "edgestream/core/cluster.hpp"
#include "edgestream/core/pipeline.hpp"
#include "edgestream/orchestrate/controller.hpp"
#include "edgestream/runtime/graph.hpp"

namespace edgestream::runtime {

struct OpMetrics {
  std::string op;
  std::string node;
  std::uint64_t events_in = 0;   // cumulative
  std::uint64_t events_out = 0;  // cumulative
  std::uint64_t queue_depth = 0;
  double cpu_util = 0.0;  // of the hosting node
  double p50_ms = 0.0;    // operator sojourn time within the interval
  double p95_ms = 0.0;
};

struct MetricsFrame {
  std::uint64_t interval = 0;  // 1-based
  std::vector<OpMetrics> ops;
  std::map<std::string, double> node_util;
  std::vector<double> latency_ms;  // end-to-end samples completed in the interval
  double throughput_eps = 0.0;     // source events per second in the interval
};

/// Nearest-rank percentile; 0 for an empty sample.
double percentile(std::vector<double> v, double q);

/// CSV header interval,node,op,events_in,events_out,queue_depth,cpu_util,p50_ms,p95_ms.
void write_metrics_header(std::ostream& out);
void write_metrics(std::ostream& out, const MetricsFrame& f);

std::vector<orchestrate::UtilizationSample> utilization_samples(const MetricsFrame& f);

/// Accumulates per-interval counters and builds frames. Unless overridden,
/// node utilization is the CPU work implied by the operators' input counts
/// (cpu_demand per 1000 events/s) over node capacity and interval length,
/// and an operator without sojourn samples reports the queueing-model
/// latency base/(1-u) at that utilization.
class FrameBuilder {
 public:
  FrameBuilder(const Graph& g, const ClusterSpec& c, double interval_s);

  void received(std::size_t op, std::uint64_t n = 1);
  void emitted(std::size_t op, std::uint64_t n = 1);
  void sojourn(std::size_t op, double ms) { lat_[op].push_back(ms); }
  void end_to_end(double ms) { e2e_.push_back(ms); }
  void source_event() { ++sources_; }
  void queue_depth(std::size_t op, std::uint64_t d) { depth_[op] = d; }

  /// Closes the current interval and starts the next one.
  MetricsFrame close(std::uint64_t interval, const Placement& pl,
                     const std::map<std::string, double>* node_util = nullptr);

  std::uint64_t events_in(std::size_t op) const { return in_[op]; }
  std::uint64_t events_out(std::size_t op) const { return out_[op]; }
  /// Overwrites the running counters with values gathered elsewhere.
  void sync_counts(const std::vector<std::uint64_t>& in, const std::vector<std::uint64_t>& out,
                   std::uint64_t source_events);
  /// Resets the cumulative counters, e.g. after restoring a checkpoint.
  void restore_counts(std::vector<std::uint64_t> in, std::vector<std::uint64_t> out);

 private:
  const Graph& g_;
  const ClusterSpec& c_;
  double interval_s_;
  std::vector<std::uint64_t> in_, out_, in_at_open_, depth_;
  std::vector<std::vector<double>> lat_;
  std::vector<double> e2e_;
  std::uint64_t sources_ = 0;
};

}  // namespace edgestream::runtime
