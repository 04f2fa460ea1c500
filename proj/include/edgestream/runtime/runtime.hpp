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
#include <memory>
#include <string>
#include <vector>

#include "edgestream/core/cluster.hpp"
#include "edgestream/core/pipeline.hpp"
#include "edgestream/core/value.hpp"
#include "edgestream/orchestrate/tune.hpp"
#include "edgestream/runtime/control.hpp"
#include "edgestream/runtime/graph.hpp"
#include "edgestream/runtime/metrics.hpp"
#include "edgestream/runtime/operator.hpp"

namespace edgestream::runtime {

EDGESTREAM_DEFINE_ERROR(WatchdogAbort);

/// Events fed to each source operator, in that source's order.
using Inputs = std::map<std::string, std::vector<Event>>;
/// Events received by each sink operator (operators without out-edges).
using SinkOutputs = std::map<std::string, std::vector<Event>>;

/// Called after each metrics interval; returned messages are applied at the
/// next event boundary.
using IntervalHook =
    std::function<std::vector<ControlMessage>(const MetricsFrame&, const Placement&)>;

struct RunOptions {
  std::vector<ScheduledControl> controls;
  /// Metrics interval: event time in deterministic mode, wall time in
  /// concurrent mode.
  double interval_ms = 1000.0;
  /// A source's watermark trails the largest timestamp it has emitted by this much.
  std::int64_t lateness_ms = 0;
  IntervalHook on_interval;
  double watchdog_s = 10.0;
};

struct RunResult {
  SinkOutputs outputs;
  /// Serialized ModelState of every learner operator at the end of the run.
  std::map<std::string, std::string> model_states;
  std::vector<MetricsFrame> frames;
  std::vector<std::string> log;
  std::vector<ControlAck> acks;
  Placement placement;  // final
  std::uint64_t source_events = 0;
  std::uint64_t sink_events = 0;
  double wall_s = 0.0;
  double throughput_eps = 0.0;  // source events per wall-clock second
};

/// Single-threaded engine. Source events are merged by (ts, source id,
/// per-source sequence) and each one is pushed through the graph before the
/// next; watermarks then advance in topological order.
class DeterministicRuntime {
 public:
  /// Throws ConfigError on an invalid pipeline or placement and
  /// UnknownOperator for inputs keyed by a non-source.
  DeterministicRuntime(PipelineSpec p, ClusterSpec c, Placement pl, Inputs inputs,
                       RunOptions options = {});
  ~DeterministicRuntime();
  DeterministicRuntime(DeterministicRuntime&&) noexcept;
  DeterministicRuntime& operator=(DeterministicRuntime&&) noexcept;

  /// Processes the next source event. False once the input is exhausted or
  /// the runtime was shut down.
  bool step();
  /// Final watermark, operator flush and last metrics frame. Idempotent.
  void finish();
  /// Steps to the end, finishes, and returns the result.
  RunResult run();

  /// Throws OutOfOrderControl, UnknownOperator, TargetInfeasible (placement
  /// unchanged) or InvalidArgument. A snapshot without target returns a
  /// checkpoint of the whole runtime, accepted by `restore`.
  ControlAck apply_control(const ControlMessage& msg);

  std::string checkpoint() const;
  /// A fresh runtime continuing from `checkpoint`. Results start empty.
  static DeterministicRuntime restore(PipelineSpec p, ClusterSpec c, Inputs inputs,
                                      std::string_view checkpoint, RunOptions options = {});

  std::uint64_t position() const;
  std::uint64_t next_seq() const;
  const Placement& placement() const;
  const RunResult& result() const;

 private:
  struct Impl;
  explicit DeterministicRuntime(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

RunResult run_deterministic(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl,
                            const Inputs& inputs, const RunOptions& options = {});

/// One thread per operator joined by bounded blocking queues. The output
/// multiset equals run_deterministic's when every order-sensitive stateful
/// operator sees its inputs through a single chain.
RunResult run_concurrent(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl,
                         const Inputs& inputs, const orchestrate::RuntimeKnobs& knobs,
                         const RunOptions& options = {});

/// True when two runs produced the same events at every sink, ignoring order.
bool same_output_multiset(const SinkOutputs& a, const SinkOutputs& b);

}  // namespace edgestream::runtime
