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

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>

#include "common.hpp"
#include "edgestream/core/bytes.hpp"
#include "edgestream/core/config.hpp"
#include "edgestream/core/hash.hpp"
#include "edgestream/runtime/runtime.hpp"

namespace edgestream::runtime {

namespace {

constexpr std::uint32_t kCheckpointMagic = 0x45535254;  // "ESRT"
constexpr std::uint32_t kCheckpointVersion = 1;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::uint64_t kMaxGapFrames = 1000;

std::uint64_t pipeline_print(const PipelineSpec& p) { return fnv1a64(to_json(p).dump()); }

struct Work {
  std::size_t op;
  std::size_t from;
  Event event;
};

}  // namespace

struct DeterministicRuntime::Impl {
  Graph g;
  ClusterSpec c;
  Placement pl;
  Inputs inputs;
  RunOptions opts;
  std::vector<std::unique_ptr<Operator>> ops;
  std::vector<std::pair<std::size_t, std::size_t>> merged;  // (source op, input index)
  std::deque<Work> queue;
  std::vector<std::vector<std::int64_t>> in_wm;
  std::vector<std::int64_t> out_wm;
  std::vector<std::int64_t> source_max;
  std::int64_t stream_time = kNoWatermark;
  FrameBuilder fb;
  std::uint64_t position = 0;
  std::uint64_t next_seq = 1;
  std::size_t sched = 0;
  std::uint64_t interval = 0;
  std::int64_t t0 = 0;
  bool stopped = false;
  bool finished = false;
  RunResult res;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  Impl(PipelineSpec p, ClusterSpec c_, Placement pl_, Inputs in, RunOptions o)
      : g(std::move(p)),
        c(std::move(c_)),
        pl(std::move(pl_)),
        inputs(std::move(in)),
        opts(std::move(o)),
        fb(g, c, opts.interval_ms / 1000.0) {
    detail::require_placement(g.pipeline(), c, pl);
    detail::require_inputs(g, inputs);
    for (std::size_t i = 0; i < g.size(); ++i) {
      try {
        ops.push_back(g.instantiate(i));
      } catch (...) {
        detail::rethrow_in_operator(g.id(i), nullptr);
      }
      in_wm.emplace_back(std::max<std::size_t>(1, g.upstream(i).size()), kNoWatermark);
    }
    out_wm.assign(g.size(), kNoWatermark);
    source_max.assign(g.size(), kNoWatermark);
    for (const auto& [id, events] : inputs) {
      std::size_t s = g.index(id);
      for (std::size_t k = 0; k < events.size(); ++k) merged.emplace_back(s, k);
    }
    std::stable_sort(merged.begin(), merged.end(), [this](const auto& a, const auto& b) {
      std::int64_t ta = event_at(a).ts, tb = event_at(b).ts;
      if (ta != tb) return ta < tb;
      if (a.first != b.first) return g.id(a.first) < g.id(b.first);
      return a.second < b.second;
    });
    if (!merged.empty()) t0 = event_at(merged.front()).ts;
    std::stable_sort(opts.controls.begin(), opts.controls.end(),
                     [](const auto& a, const auto& b) { return a.message.seq < b.message.seq; });
    res.placement = pl;
  }

  const Event& event_at(const std::pair<std::size_t, std::size_t>& m) const {
    return inputs.at(g.id(m.first))[m.second];
  }

  void collect_log(std::size_t i) {
    for (auto& line : ops[i]->take_log()) res.log.push_back("event=" + std::to_string(position) + " " + line);
  }

  void route(std::size_t i, Outputs& outs) {
    for (auto& o : outs) {
      fb.emitted(i);
      if (g.is_sink(i)) {
        if (stream_time != kNoWatermark) fb.end_to_end(static_cast<double>(std::max<std::int64_t>(0, stream_time - o.event.ts)));
        res.outputs[g.id(i)].push_back(std::move(o.event));
        ++res.sink_events;
        continue;
      }
      if (o.target.empty()) {
        const auto& down = g.downstream(i);
        for (std::size_t k = 0; k < down.size(); ++k) {
          if (k + 1 == down.size()) {
            queue.push_back({down[k], i, std::move(o.event)});
          } else {
            queue.push_back({down[k], i, o.event});
          }
        }
      } else {
        std::size_t d = kNone;
        for (auto cand : g.downstream(i)) {
          if (g.id(cand) == o.target) d = cand;
        }
        if (d == kNone) {
          throw OperatorError("operator '" + g.id(i) + "' emitted to '" + o.target +
                              "', which is not downstream");
        }
        queue.push_back({d, i, std::move(o.event)});
      }
    }
    outs.clear();
  }

  void deliver(std::size_t i, std::size_t from, const Event& e) {
    fb.received(i);
    Outputs outs;
    static const std::string kExternal;
    try {
      ops[i]->on_event(e, from == kNone ? kExternal : g.id(from), outs);
    } catch (...) {
      detail::rethrow_in_operator(g.id(i), &e);
    }
    collect_log(i);
    route(i, outs);
  }

  void drain() {
    while (!queue.empty()) {
      Work w = std::move(queue.front());
      queue.pop_front();
      deliver(w.op, w.from, w.event);
    }
  }

  void notify(std::size_t i, const std::string& from, std::int64_t side) {
    std::int64_t combined = *std::min_element(in_wm[i].begin(), in_wm[i].end());
    Outputs outs;
    try {
      ops[i]->on_watermark(from, side, combined, outs);
    } catch (...) {
      detail::rethrow_in_operator(g.id(i), nullptr);
    }
    collect_log(i);
    route(i, outs);
    drain();
  }

  void propagate() {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.is_source(i)) {
        if (source_max[i] > in_wm[i][0]) {
          in_wm[i][0] = source_max[i];
          notify(i, "", source_max[i]);
        }
      } else {
        const auto& up = g.upstream(i);
        for (std::size_t k = 0; k < up.size(); ++k) {
          if (out_wm[up[k]] > in_wm[i][k]) {
            in_wm[i][k] = out_wm[up[k]];
            notify(i, g.id(up[k]), in_wm[i][k]);
          }
        }
      }
      out_wm[i] = std::max(out_wm[i], *std::min_element(in_wm[i].begin(), in_wm[i].end()));
    }
  }

  void close_frame() {
    if (interval == 0) return;
    res.frames.push_back(fb.close(interval, pl));
    if (opts.on_interval) {
      for (const auto& msg : opts.on_interval(res.frames.back(), pl)) try_control(msg);
    }
  }

  void advance_interval(std::int64_t ts) {
    auto k = static_cast<std::uint64_t>(std::max<std::int64_t>(0, ts - t0) / std::max<std::int64_t>(1, static_cast<std::int64_t>(opts.interval_ms))) + 1;
    if (interval == 0) {
      interval = k;
      return;
    }
    if (k <= interval) return;
    if (k - interval > kMaxGapFrames) {
      close_frame();
      interval = k;
      return;
    }
    while (interval < k) {
      close_frame();
      ++interval;
    }
  }

  std::uint64_t progress_of(const ScheduledControl& s) const {
    if (s.message.kind == ControlKind::kShutdown || s.message.target.empty() || !g.contains(s.message.target)) {
      return position;
    }
    return fb.events_in(g.index(s.message.target));
  }

  void run_scheduled(bool all) {
    while (sched < opts.controls.size()) {
      const auto& s = opts.controls[sched];
      if (!all && progress_of(s) < s.after) break;
      ++sched;
      try_control(s.message);
    }
  }

  void try_control(const ControlMessage& msg) {
    try {
      apply(msg);
    } catch (const TargetInfeasible& e) {
      ControlAck ack{msg.seq, msg.kind, msg.target, false, e.what(), {}};
      res.acks.push_back(ack);
    }
  }

  void log_control(const ControlMessage& msg, const std::string& detail) {
    std::string line = "event=" + std::to_string(position) + " control seq=" + std::to_string(msg.seq) +
                       " kind=" + std::string(to_string(msg.kind));
    if (!msg.target.empty()) line += " target=" + msg.target;
    if (!detail.empty()) line += " " + detail;
    res.log.push_back(std::move(line));
  }

  ControlAck apply(const ControlMessage& msg) {
    if (msg.seq != next_seq) {
      throw OutOfOrderControl("expected control seq " + std::to_string(next_seq) + ", got " +
                              std::to_string(msg.seq));
    }
    std::size_t i = kNone;
    if (!msg.target.empty()) i = g.index(msg.target);
    bool needs_target = msg.kind == ControlKind::kSetSampleRate || msg.kind == ControlKind::kMigrate;
    if (needs_target && i == kNone) throw UnknownOperator("control '" + std::string(to_string(msg.kind)) + "' needs a target");
    ControlAck ack{msg.seq, msg.kind, msg.target, true, {}, {}};
    switch (msg.kind) {
      case ControlKind::kSetSampleRate:
        try {
          ops[i]->set_sample_rate(msg.payload);
        } catch (...) {
          detail::rethrow_in_operator(g.id(i), nullptr);
        }
        ack.detail = "payload=" + msg.payload.dump();
        break;
      case ControlKind::kMigrate: {
        auto to = msg.payload.find("to");
        if (to == msg.payload.end() || !to->is_string()) throw InvalidArgument("migrate needs payload {\"to\": node}");
        std::string from = pl.node_of(msg.target);
        try {
          check_migration(g.pipeline(), c, pl, msg.target, to->get<std::string>());
        } catch (const TargetInfeasible& e) {
          ++next_seq;
          log_control(msg, "rejected " + std::string(e.what()));
          throw;
        }
        std::string state = save_operator(*ops[i]);
        ops[i] = restore_operator(g.spec(i), g.context(i), state);
        pl.assignment[msg.target] = to->get<std::string>();
        res.placement = pl;
        ack.detail = "from=" + from + " to=" + pl.node_of(msg.target) + " state_bytes=" + std::to_string(state.size());
        break;
      }
      case ControlKind::kSnapshot:
        if (i == kNone) {
          ack.state = checkpoint(next_seq + 1);
        } else {
          auto model = ops[i]->model_state();
          ack.state = model ? *model : save_operator(*ops[i]);
        }
        ack.detail = "bytes=" + std::to_string(ack.state.size());
        break;
      case ControlKind::kShutdown:
        stopped = true;
        break;
    }
    ++next_seq;
    log_control(msg, ack.detail);
    res.acks.push_back(ack);
    return ack;
  }

  bool step() {
    if (stopped || finished) return false;
    run_scheduled(false);
    if (stopped || position >= merged.size()) return false;
    const auto& m = merged[position];
    const Event& e = event_at(m);
    advance_interval(e.ts);
    stream_time = std::max(stream_time, e.ts);
    fb.source_event();
    ++res.source_events;
    deliver(m.first, kNone, e);
    drain();
    ++position;
    if (e.ts > kNoWatermark + opts.lateness_ms) {
      source_max[m.first] = std::max(source_max[m.first], e.ts - opts.lateness_ms);
    }
    propagate();
    return true;
  }

  void finish() {
    if (finished) return;
    if (!stopped) run_scheduled(true);
    for (auto s : g.sources()) source_max[s] = kFinalWatermark;
    propagate();
    for (std::size_t i = 0; i < g.size(); ++i) {
      Outputs outs;
      try {
        ops[i]->finish(outs);
      } catch (...) {
        detail::rethrow_in_operator(g.id(i), nullptr);
      }
      collect_log(i);
      route(i, outs);
      drain();
    }
    if (interval == 0 && res.source_events > 0) interval = 1;
    finished = true;
    close_frame();
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (auto m = ops[i]->model_state()) res.model_states[g.id(i)] = *m;
    }
    res.placement = pl;
    res.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    res.throughput_eps = res.wall_s > 0 ? static_cast<double>(res.source_events) / res.wall_s : 0.0;
  }

  /// `seq` is the next expected control once the checkpoint is restored.
  std::string checkpoint(std::uint64_t seq) const {
    ByteWriter w;
    w.u32(kCheckpointMagic);
    w.u32(kCheckpointVersion);
    w.u64(pipeline_print(g.pipeline()));
    w.u64(merged.size());
    w.u64(pl.assignment.size());
    for (const auto& [op, node] : pl.assignment) {
      w.str(op);
      w.str(node);
    }
    w.u64(position);
    w.u64(seq);
    w.u64(sched);
    w.u64(interval);
    w.boolean(stopped);
    w.i64(stream_time);
    for (std::size_t i = 0; i < g.size(); ++i) {
      w.u64(fb.events_in(i));
      w.u64(fb.events_out(i));
      w.i64(source_max[i]);
      w.i64(out_wm[i]);
      for (auto v : in_wm[i]) w.i64(v);
      w.str(save_operator(*ops[i]));
    }
    return std::move(w).take();
  }

  void load(std::string_view bytes) {
    ByteReader r(bytes);
    if (r.u32() != kCheckpointMagic) throw CorruptState("not a runtime checkpoint");
    if (r.u32() != kCheckpointVersion) throw CorruptState("unsupported checkpoint version");
    if (r.u64() != pipeline_print(g.pipeline())) throw CorruptState("checkpoint belongs to a different pipeline");
    if (r.u64() != merged.size()) throw CorruptState("checkpoint was taken over different inputs");
    Placement next;
    for (auto n = r.u64(); n > 0; --n) {
      std::string op = r.str();
      next.assignment[op] = r.str();
    }
    detail::require_placement(g.pipeline(), c, next);
    pl = std::move(next);
    res.placement = pl;
    position = r.u64();
    next_seq = r.u64();
    sched = r.u64();
    interval = r.u64();
    stopped = r.boolean();
    stream_time = r.i64();
    if (position > merged.size()) throw CorruptState("checkpoint position past the input");
    std::vector<std::uint64_t> in(g.size()), out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      in[i] = r.u64();
      out[i] = r.u64();
      source_max[i] = r.i64();
      out_wm[i] = r.i64();
      for (auto& v : in_wm[i]) v = r.i64();
      ops[i] = restore_operator(g.spec(i), g.context(i), r.str());
    }
    if (!r.done()) throw CorruptState("trailing bytes in checkpoint");
    fb.restore_counts(in, out);
  }
};

DeterministicRuntime::DeterministicRuntime(PipelineSpec p, ClusterSpec c, Placement pl, Inputs inputs,
                                           RunOptions options)
    : impl_(std::make_unique<Impl>(std::move(p), std::move(c), std::move(pl), std::move(inputs),
                                   std::move(options))) {}
DeterministicRuntime::DeterministicRuntime(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
DeterministicRuntime::~DeterministicRuntime() = default;
DeterministicRuntime::DeterministicRuntime(DeterministicRuntime&&) noexcept = default;
DeterministicRuntime& DeterministicRuntime::operator=(DeterministicRuntime&&) noexcept = default;

bool DeterministicRuntime::step() { return impl_->step(); }
void DeterministicRuntime::finish() { impl_->finish(); }

RunResult DeterministicRuntime::run() {
  while (impl_->step()) {
  }
  impl_->finish();
  return impl_->res;
}

ControlAck DeterministicRuntime::apply_control(const ControlMessage& msg) {
  if (impl_->finished) throw InvalidArgument("runtime has finished");
  return impl_->apply(msg);
}

std::string DeterministicRuntime::checkpoint() const { return impl_->checkpoint(impl_->next_seq); }

DeterministicRuntime DeterministicRuntime::restore(PipelineSpec p, ClusterSpec c, Inputs inputs,
                                                   std::string_view checkpoint, RunOptions options) {
  ByteReader peek(checkpoint);
  if (peek.u32() != kCheckpointMagic) throw CorruptState("not a runtime checkpoint");
  if (peek.u32() != kCheckpointVersion) throw CorruptState("unsupported checkpoint version");
  if (peek.u64() != pipeline_print(p)) throw CorruptState("checkpoint belongs to a different pipeline");
  peek.u64();
  Placement pl;
  for (auto n = peek.u64(); n > 0; --n) {
    std::string op = peek.str();
    pl.assignment[op] = peek.str();
  }
  auto impl = std::make_unique<Impl>(std::move(p), std::move(c), std::move(pl), std::move(inputs),
                                     std::move(options));
  impl->load(checkpoint);
  return DeterministicRuntime(std::move(impl));
}

std::uint64_t DeterministicRuntime::position() const { return impl_->position; }
std::uint64_t DeterministicRuntime::next_seq() const { return impl_->next_seq; }
const Placement& DeterministicRuntime::placement() const { return impl_->pl; }
const RunResult& DeterministicRuntime::result() const { return impl_->res; }

RunResult run_deterministic(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl,
                            const Inputs& inputs, const RunOptions& options) {
  return DeterministicRuntime(p, c, pl, inputs, options).run();
}

}  // namespace edgestream::runtime
