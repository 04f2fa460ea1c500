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
#include <functional>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgestream/core/cluster.hpp"
#include "edgestream/core/pipeline.hpp"
#include "edgestream/runtime/control.hpp"
#include "edgestream/runtime/metrics.hpp"
#include "edgestream/runtime/runtime.hpp"

namespace edgestream::runtime {

/// Virtual time in milliseconds. Actions run in time order, ties in the
/// order they were scheduled.
class VirtualClock {
 public:
  using Action = std::function<void()>;

  double now() const { return now_; }
  /// Throws InvalidArgument when `at` lies in the past.
  void schedule(double at, Action action);
  /// Runs the earliest action. False when none is pending.
  bool step();
  /// Runs every action due at or before `t`, then moves the clock to `t`.
  void run_until(double t);
  std::size_t pending() const { return heap_.size(); }

 private:
  struct Entry {
    double at;
    std::uint64_t seq;
    Action action;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.at != b.at ? a.at > b.at : a.seq > b.seq;
    }
  };

  double now_ = 0.0;
  std::uint64_t seq_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
};

/// Offered input rate from `at_s` on. Before the first step the rate is 0.
struct WorkloadStep {
  double at_s = 0.0;
  double eps = 0.0;
};

/// [{"at_s": 0, "eps": 200}, ...] or a bare number for a constant rate.
std::vector<WorkloadStep> workload_from_json(const nlohmann::json& j);

struct SimOptions {
  std::vector<WorkloadStep> workload;
  double duration_s = 10.0;
  double interval_s = 1.0;
  std::uint64_t seed = 0;
  /// Migrations returned here start at the interval boundary.
  IntervalHook on_interval;
};

struct SimResult {
  std::vector<MetricsFrame> frames;
  std::vector<std::string> log;
  std::vector<ControlAck> acks;
  Placement placement;  // final
  std::map<std::string, std::uint64_t> arrivals;  // per operator
  std::uint64_t completed = 0;                    // events that left a sink
  double mean_latency_ms = 0.0;                   // over all completed events
  double migration_stall_ms = 0.0;                // summed over migrations
};

/// Discrete-event run of a placed pipeline without operator logic. Sources
/// receive Poisson arrivals; each node is a processor-sharing server whose
/// jobs need Exp(cpu_demand / cpu_capacity) ms of the whole node; an
/// operator forwards an event on each out-edge with probability equal to its
/// selectivity; links add latency plus serialization delay. Node utilization
/// is the sampled work offered in an interval over the interval length.
SimResult run_simulated(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl,
                        const SimOptions& options);

}  // namespace edgestream::runtime
