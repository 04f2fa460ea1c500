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
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <future>
#include <mutex>
#include <thread>

#include "common.hpp"
#include "edgestream/runtime/runtime.hpp"

namespace edgestream::runtime {

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kNoControl = -1;
constexpr int kUntargeted = -2;

struct Msg {
  enum Kind { kEvents, kWatermark, kEnd } kind = kEvents;
  std::vector<Event> events;
  std::int64_t wm = kNoWatermark;
  Clock::time_point ingress;

  std::size_t weight() const { return std::max<std::size_t>(1, events.size()); }
};

/// Input side of one worker: a bounded FIFO lane per upstream edge.
struct Inbox {
  std::mutex m;
  std::condition_variable ready;
  std::condition_variable space;
  std::vector<std::deque<Msg>> lanes;
  std::vector<std::size_t> load;
  std::size_t next_lane = 0;
  std::atomic<std::uint64_t> depth{0};
};

struct OpStats {
  std::atomic<std::uint64_t> in{0};
  std::atomic<std::uint64_t> out{0};
  std::mutex m;
  std::vector<double> sojourn;
  std::vector<double> e2e;
};

class Engine {
 public:
  Engine(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl, const Inputs& inputs,
         const orchestrate::RuntimeKnobs& knobs, const RunOptions& opts)
      : g_(p), c_(c), inputs_(inputs), knobs_(knobs), opts_(opts), pl_(pl), fb_(g_, c_, opts.interval_ms / 1000.0) {
    if (knobs.batch_size == 0 || knobs.parallelism == 0 || knobs.queue_capacity == 0) {
      throw InvalidArgument("runtime knobs must all be >= 1");
    }
    detail::require_placement(p, c, pl);
    detail::require_inputs(g_, inputs);
    const std::size_t n = g_.size();
    inbox_ = std::vector<Inbox>(n);
    stats_ = std::vector<OpStats>(n);
    ops_.resize(n);
    copies_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      try {
        ops_[i] = g_.instantiate(i);
        if (ops_[i]->stateless()) {
          for (std::uint32_t k = 1; k < knobs.parallelism; ++k) copies_[i].push_back(g_.instantiate(i));
        }
      } catch (...) {
        detail::rethrow_in_operator(g_.id(i), nullptr);
      }
      inbox_[i].lanes.resize(g_.upstream(i).size());
      inbox_[i].load.resize(g_.upstream(i).size());
    }
    lane_of_.resize(n);
    for (std::size_t d = 0; d < n; ++d) {
      const auto& up = g_.upstream(d);
      for (std::size_t k = 0; k < up.size(); ++k) lane_of_[up[k]].emplace_back(d, k);
    }
    for (auto& lanes : lane_of_) {
      std::sort(lanes.begin(), lanes.end(), [this](const auto& a, const auto& b) { return g_.id(a.first) < g_.id(b.first); });
    }
    pending_ = opts.controls;
    std::stable_sort(pending_.begin(), pending_.end(),
                     [](const auto& a, const auto& b) { return a.message.seq < b.message.seq; });
    sinks_.resize(n);
    logs_.resize(n);
    update_head();
  }

  RunResult run() {
    const auto started = Clock::now();
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < g_.size(); ++i) threads.emplace_back([this, i] { guarded(i); });
    std::thread monitor([this] { watch(); });
    for (auto& t : threads) t.join();
    {
      std::lock_guard lock(monitor_m_);
      done_ = true;
    }
    monitor_cv_.notify_all();
    monitor.join();
    if (error_) std::rethrow_exception(error_);
    if (watchdog_fired_) throw WatchdogAbort(watchdog_report_);

    RunResult res;
    res.wall_s = std::chrono::duration<double>(Clock::now() - started).count();
    res.frames = std::move(frames_);
    if (frames_closed_ == 0 || source_events_.load() > frame_sources_) res.frames.push_back(close_frame());
    for (std::size_t i = 0; i < g_.size(); ++i) {
      if (g_.is_sink(i)) {
        res.sink_events += sinks_[i].size();
        res.outputs[g_.id(i)] = std::move(sinks_[i]);
      }
      if (auto m = ops_[i]->model_state()) res.model_states[g_.id(i)] = *m;
    }
    for (std::size_t i = 0; i < g_.size(); ++i) {
      for (auto& l : logs_[i]) res.log.push_back(std::move(l));
    }
    for (auto& l : control_log_) res.log.push_back(std::move(l));
    for (std::size_t k = head_; k < pending_.size(); ++k) {
      const auto& m = pending_[k].message;
      res.acks.push_back({m.seq, m.kind, m.target, false, "run ended before the control applied", {}});
    }
    res.acks.insert(res.acks.begin(), acks_.begin(), acks_.end());
    res.placement = pl_;
    res.source_events = source_events_.load();
    res.throughput_eps = res.wall_s > 0 ? static_cast<double>(res.source_events) / res.wall_s : 0.0;
    return res;
  }

 private:
  // ---- queues ---------------------------------------------------------------

  void push(std::size_t d, std::size_t lane, Msg msg) {
    Inbox& box = inbox_[d];
    const std::size_t w = msg.weight();
    {
      std::unique_lock lock(box.m);
      box.space.wait(lock, [&] {
        return abort_.load() || box.load[lane] == 0 || box.load[lane] + w <= knobs_.queue_capacity;
      });
      if (abort_.load()) return;
      box.load[lane] += w;
      box.lanes[lane].push_back(std::move(msg));
      box.depth += w;
    }
    ++progress_;
    box.ready.notify_one();
  }

  bool pop(std::size_t i, Msg& out, std::size_t& lane) {
    Inbox& box = inbox_[i];
    {
      std::unique_lock lock(box.m);
      auto any = [&] {
        for (const auto& l : box.lanes) {
          if (!l.empty()) return true;
        }
        return false;
      };
      box.ready.wait(lock, [&] { return abort_.load() || any(); });
      if (abort_.load()) return false;
      const std::size_t n = box.lanes.size();
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t cand = (box.next_lane + k) % n;
        if (!box.lanes[cand].empty()) {
          lane = cand;
          break;
        }
      }
      out = std::move(box.lanes[lane].front());
      box.lanes[lane].pop_front();
      box.load[lane] -= out.weight();
      box.depth -= out.weight();
      box.next_lane = (lane + 1) % n;
    }
    ++progress_;
    box.space.notify_all();
    return true;
  }

  bool inbox_empty(std::size_t i) { return inbox_[i].depth.load() == 0; }

  // ---- workers --------------------------------------------------------------

  struct Worker {
    std::size_t i;
    std::vector<std::vector<Event>> buffers;  // per downstream, lane_of_ order
    std::vector<Clock::time_point> buffer_ingress;
    std::vector<std::int64_t> in_wm;
    std::int64_t out_wm = kNoWatermark;
    Clock::time_point ingress;
  };

  void guarded(std::size_t i) {
    try {
      work(i);
    } catch (...) {
      {
        std::lock_guard lock(error_m_);
        if (!error_) error_ = std::current_exception();
      }
      trigger_abort();
    }
  }

  void trigger_abort() {
    abort_ = true;
    for (auto& box : inbox_) {
      { std::lock_guard lock(box.m); }
      box.ready.notify_all();
      box.space.notify_all();
    }
  }

  void work(std::size_t i) {
    Worker w{i, std::vector<std::vector<Event>>(lane_of_[i].size()),
             std::vector<Clock::time_point>(lane_of_[i].size()),
             std::vector<std::int64_t>(std::max<std::size_t>(1, g_.upstream(i).size()), kNoWatermark),
             kNoWatermark, Clock::now()};
    if (g_.is_source(i)) {
      run_source(w);
    } else {
      run_inner(w);
    }
    if (abort_.load()) return;
    Outputs outs;
    try {
      ops_[i]->finish(outs);
    } catch (...) {
      detail::rethrow_in_operator(g_.id(i), nullptr);
    }
    route(w, outs);
    flush_all(w);
    for (const auto& [d, lane] : lane_of_[i]) push(d, lane, Msg{Msg::kEnd, {}, kNoWatermark, Clock::now()});
  }

  void run_source(Worker& w) {
    const std::size_t i = w.i;
    static const std::vector<Event> kNothing;
    auto it = inputs_.find(g_.id(i));
    const auto& events = it == inputs_.end() ? kNothing : it->second;
    std::int64_t max_ts = kNoWatermark;
    std::size_t in_batch = 0;
    for (const auto& e : events) {
      if (abort_.load()) return;
      check_controls(w);
      if (stop_.load()) break;
      w.ingress = Clock::now();
      ++source_events_;
      process(w, e, std::string());
      if (e.ts > kNoWatermark + opts_.lateness_ms) max_ts = std::max(max_ts, e.ts - opts_.lateness_ms);
      if (++in_batch >= knobs_.batch_size) {
        in_batch = 0;
        flush_all(w);
        advance_watermark(w, 0, max_ts, "");
      }
    }
    run_remaining_controls(w);
    flush_all(w);
    advance_watermark(w, 0, kFinalWatermark, "");
  }

  void run_inner(Worker& w) {
    const std::size_t i = w.i;
    const auto& up = g_.upstream(i);
    std::size_t ended = 0;
    Msg msg;
    std::size_t lane = 0;
    while (ended < up.size()) {
      if (inbox_empty(i)) flush_all(w);
      if (!pop(i, msg, lane)) return;
      const std::string& from = g_.id(up[lane]);
      switch (msg.kind) {
        case Msg::kEvents: {
          w.ingress = msg.ingress;
          process_batch(w, msg.events, from);
          const double ms = std::chrono::duration<double, std::milli>(Clock::now() - msg.ingress).count();
          std::lock_guard lock(stats_[i].m);
          stats_[i].sojourn.push_back(ms);
          break;
        }
        case Msg::kWatermark:
          advance_watermark(w, lane, msg.wm, from);
          break;
        case Msg::kEnd:
          ++ended;
          break;
      }
    }
    run_remaining_controls(w);
  }

  void process(Worker& w, const Event& e, const std::string& from) {
    const std::size_t i = w.i;
    ++stats_[i].in;
    Outputs outs;
    try {
      ops_[i]->on_event(e, from, outs);
    } catch (...) {
      detail::rethrow_in_operator(g_.id(i), &e);
    }
    collect_log(i);
    route(w, outs);
  }

  void process_batch(Worker& w, std::vector<Event>& events, const std::string& from) {
    const std::size_t i = w.i;
    const std::size_t par = copies_[i].size() + 1;
    if (par == 1 || events.size() < 2 * par) {
      for (const auto& e : events) {
        check_controls(w);
        process(w, e, from);
      }
      return;
    }
    check_controls(w);
    const std::size_t chunk = (events.size() + par - 1) / par;
    std::vector<Outputs> parts(par);
    auto run_chunk = [&](std::size_t k) {
      Operator& op = k == 0 ? *ops_[i] : *copies_[i][k - 1];
      const std::size_t lo = k * chunk, hi = std::min(events.size(), lo + chunk);
      for (std::size_t j = lo; j < hi; ++j) {
        try {
          op.on_event(events[j], from, parts[k]);
        } catch (...) {
          detail::rethrow_in_operator(g_.id(i), &events[j]);
        }
      }
    };
    std::vector<std::future<void>> futures;
    for (std::size_t k = 1; k < par; ++k) futures.push_back(std::async(std::launch::async, run_chunk, k));
    std::exception_ptr first;
    try {
      run_chunk(0);
    } catch (...) {
      first = std::current_exception();
    }
    for (auto& f : futures) {
      try {
        f.get();
      } catch (...) {
        if (!first) first = std::current_exception();
      }
    }
    if (first) std::rethrow_exception(first);
    stats_[i].in += events.size();
    for (auto& part : parts) route(w, part);
  }

  void advance_watermark(Worker& w, std::size_t lane, std::int64_t wm, const std::string& from) {
    const std::size_t i = w.i;
    if (wm <= w.in_wm[lane]) return;
    w.in_wm[lane] = wm;
    const std::int64_t combined = *std::min_element(w.in_wm.begin(), w.in_wm.end());
    Outputs outs;
    try {
      ops_[i]->on_watermark(from, wm, combined, outs);
    } catch (...) {
      detail::rethrow_in_operator(g_.id(i), nullptr);
    }
    collect_log(i);
    route(w, outs);
    if (combined > w.out_wm) {
      w.out_wm = combined;
      flush_all(w);
      for (const auto& [d, l] : lane_of_[i]) push(d, l, Msg{Msg::kWatermark, {}, combined, Clock::now()});
    }
  }

  void route(Worker& w, Outputs& outs) {
    const std::size_t i = w.i;
    stats_[i].out += outs.size();
    if (g_.is_sink(i)) {
      const double ms = std::chrono::duration<double, std::milli>(Clock::now() - w.ingress).count();
      {
        std::lock_guard lock(stats_[i].m);
        stats_[i].e2e.insert(stats_[i].e2e.end(), outs.size(), ms);
      }
      for (auto& o : outs) sinks_[i].push_back(std::move(o.event));
      outs.clear();
      return;
    }
    const auto& lanes = lane_of_[i];
    for (auto& o : outs) {
      if (o.target.empty()) {
        for (std::size_t k = 0; k < lanes.size(); ++k) {
          if (k + 1 == lanes.size()) {
            append(w, k, std::move(o.event));
          } else {
            append(w, k, o.event);
          }
        }
        continue;
      }
      std::size_t k = 0;
      while (k < lanes.size() && g_.id(lanes[k].first) != o.target) ++k;
      if (k == lanes.size()) {
        throw OperatorError("operator '" + g_.id(i) + "' emitted to '" + o.target + "', which is not downstream");
      }
      append(w, k, std::move(o.event));
    }
    outs.clear();
  }

  void append(Worker& w, std::size_t k, Event e) {
    if (w.buffers[k].empty()) w.buffer_ingress[k] = w.ingress;
    w.buffers[k].push_back(std::move(e));
    if (w.buffers[k].size() >= knobs_.batch_size) flush(w, k);
  }

  void flush(Worker& w, std::size_t k) {
    if (w.buffers[k].empty()) return;
    const auto [d, lane] = lane_of_[w.i][k];
    Msg msg{Msg::kEvents, std::move(w.buffers[k]), kNoWatermark, w.buffer_ingress[k]};
    w.buffers[k] = {};
    w.buffers[k].reserve(knobs_.batch_size);
    push(d, lane, std::move(msg));
  }

  void flush_all(Worker& w) {
    for (std::size_t k = 0; k < w.buffers.size(); ++k) flush(w, k);
  }

  void collect_log(std::size_t i) {
    for (auto& line : ops_[i]->take_log()) {
      logs_[i].push_back("event=" + std::to_string(stats_[i].in.load()) + " " + line);
    }
  }

  // ---- control plane --------------------------------------------------------

  void update_head() {
    if (head_ >= pending_.size()) {
      head_target_ = kNoControl;
      return;
    }
    const auto& m = pending_[head_].message;
    if (m.kind == ControlKind::kShutdown || m.target.empty() || !g_.contains(m.target)) {
      head_target_ = kUntargeted;
    } else {
      head_target_ = static_cast<int>(g_.index(m.target));
    }
  }

  void check_controls(Worker& w) {
    const int head = head_target_.load(std::memory_order_relaxed);
    if (head == kNoControl) return;
    if (head != static_cast<int>(w.i) && !(head == kUntargeted && g_.is_source(w.i))) return;
    std::lock_guard lock(control_m_);
    apply_ready(w, false);
  }

  void run_remaining_controls(Worker& w) {
    std::lock_guard lock(control_m_);
    apply_ready(w, true);
  }

  /// Applies head controls meant for this worker while their trigger holds.
  void apply_ready(Worker& w, bool all) {
    while (head_ < pending_.size()) {
      const auto& s = pending_[head_];
      const int head = head_target_.load();
      const bool mine = head == static_cast<int>(w.i) || (head == kUntargeted && g_.is_source(w.i));
      if (!mine) return;
      const std::uint64_t progress = head == kUntargeted ? source_events_.load() : stats_[w.i].in.load();
      if (!all && progress < s.after) return;
      apply(w, s.message);
      ++head_;
      update_head();
    }
  }

  void apply(Worker& w, const ControlMessage& msg) {
    if (msg.seq != next_seq_) {
      throw OutOfOrderControl("expected control seq " + std::to_string(next_seq_) + ", got " +
                              std::to_string(msg.seq));
    }
    const std::size_t i = w.i;
    const bool needs_target = msg.kind != ControlKind::kShutdown;
    if (needs_target && msg.target.empty()) {
      throw UnknownOperator("control '" + std::string(to_string(msg.kind)) + "' needs a target");
    }
    if (needs_target && !g_.contains(msg.target)) throw UnknownOperator("no operator '" + msg.target + "'");
    ControlAck ack{msg.seq, msg.kind, msg.target, true, {}, {}};
    switch (msg.kind) {
      case ControlKind::kSetSampleRate:
        try {
          ops_[i]->set_sample_rate(msg.payload);
        } catch (...) {
          detail::rethrow_in_operator(g_.id(i), nullptr);
        }
        ack.detail = "payload=" + msg.payload.dump();
        break;
      case ControlKind::kMigrate: {
        auto to = msg.payload.find("to");
        if (to == msg.payload.end() || !to->is_string()) throw InvalidArgument("migrate needs payload {\"to\": node}");
        const std::string from = pl_.node_of(msg.target);
        try {
          check_migration(g_.pipeline(), c_, pl_, msg.target, to->get<std::string>());
        } catch (const TargetInfeasible& e) {
          ack.applied = false;
          ack.detail = std::string("rejected ") + e.what();
          break;
        }
        // The worker is paused here with its input queued, so moving the
        // state is the whole protocol.
        const std::string state = save_operator(*ops_[i]);
        ops_[i] = restore_operator(g_.spec(i), g_.context(i), state);
        pl_.assignment[msg.target] = to->get<std::string>();
        ack.detail = "from=" + from + " to=" + to->get<std::string>() + " state_bytes=" + std::to_string(state.size());
        break;
      }
      case ControlKind::kSnapshot: {
        auto model = ops_[i]->model_state();
        ack.state = model ? *model : save_operator(*ops_[i]);
        ack.detail = "bytes=" + std::to_string(ack.state.size());
        break;
      }
      case ControlKind::kShutdown:
        stop_ = true;
        break;
    }
    ++next_seq_;
    const std::uint64_t at = msg.kind == ControlKind::kShutdown ? source_events_.load() : stats_[i].in.load();
    std::string line = "event=" + std::to_string(at) + " control seq=" + std::to_string(msg.seq) +
                       " kind=" + std::string(to_string(msg.kind));
    if (!msg.target.empty()) line += " target=" + msg.target;
    if (!ack.detail.empty()) line += " " + ack.detail;
    control_log_.push_back(std::move(line));
    acks_.push_back(std::move(ack));
  }

  // ---- metrics and watchdog -------------------------------------------------

  MetricsFrame close_frame() {
    std::vector<std::uint64_t> in(g_.size()), out(g_.size());
    for (std::size_t i = 0; i < g_.size(); ++i) {
      in[i] = stats_[i].in.load();
      out[i] = stats_[i].out.load();
      fb_.queue_depth(i, inbox_[i].depth.load());
      std::vector<double> soj, e2e;
      {
        std::lock_guard lock(stats_[i].m);
        soj.swap(stats_[i].sojourn);
        e2e.swap(stats_[i].e2e);
      }
      for (double s : soj) fb_.sojourn(i, s);
      for (double s : e2e) fb_.end_to_end(s);
    }
    const std::uint64_t sources = source_events_.load();
    fb_.sync_counts(in, out, sources - frame_sources_);
    frame_sources_ = sources;
    Placement pl;
    {
      std::lock_guard lock(control_m_);
      pl = pl_;
    }
    return fb_.close(++frames_closed_, pl);
  }

  void watch() {
    const auto interval = std::chrono::duration<double, std::milli>(opts_.interval_ms);
    const auto tick = std::chrono::milliseconds(
        std::max<long>(1, std::min<long>(100, static_cast<long>(opts_.watchdog_s * 1000.0 / 4.0))));
    auto next_frame = Clock::now() + std::chrono::duration_cast<Clock::duration>(interval);
    auto last_progress = Clock::now();
    std::uint64_t seen = progress_.load();
    std::unique_lock lock(monitor_m_);
    while (!done_) {
      monitor_cv_.wait_for(lock, tick);
      if (done_) break;
      const auto now = Clock::now();
      if (now >= next_frame) {
        lock.unlock();
        frames_.push_back(close_frame());
        if (opts_.on_interval) {
          auto msgs = opts_.on_interval(frames_.back(), placement_copy());
          std::lock_guard cl(control_m_);
          for (auto& m : msgs) pending_.push_back({0, std::move(m)});
          std::stable_sort(pending_.begin() + static_cast<std::ptrdiff_t>(head_), pending_.end(),
                           [](const auto& a, const auto& b) { return a.message.seq < b.message.seq; });
          update_head();
        }
        lock.lock();
        next_frame += std::chrono::duration_cast<Clock::duration>(interval);
      }
      const std::uint64_t p = progress_.load();
      if (p != seen) {
        seen = p;
        last_progress = now;
      } else if (std::chrono::duration<double>(now - last_progress).count() >= opts_.watchdog_s && !abort_) {
        std::string report = "no progress for " + std::to_string(opts_.watchdog_s) + " s; queue depths:";
        for (std::size_t i = 0; i < g_.size(); ++i) {
          report += " " + g_.id(i) + "=" + std::to_string(inbox_[i].depth.load());
        }
        watchdog_report_ = report;
        watchdog_fired_ = true;
        lock.unlock();
        trigger_abort();
        lock.lock();
      }
    }
  }

  Placement placement_copy() {
    std::lock_guard lock(control_m_);
    return pl_;
  }

  Graph g_;
  const ClusterSpec& c_;
  const Inputs& inputs_;
  orchestrate::RuntimeKnobs knobs_;
  const RunOptions& opts_;
  Placement pl_;
  FrameBuilder fb_;
  std::vector<std::unique_ptr<Operator>> ops_;
  std::vector<std::vector<std::unique_ptr<Operator>>> copies_;
  std::vector<Inbox> inbox_;
  std::vector<OpStats> stats_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> lane_of_;  // (consumer, lane)
  std::vector<std::vector<Event>> sinks_;
  std::vector<std::vector<std::string>> logs_;

  std::mutex control_m_;
  std::vector<ScheduledControl> pending_;
  std::size_t head_ = 0;
  std::atomic<int> head_target_{kNoControl};
  std::uint64_t next_seq_ = 1;
  std::vector<ControlAck> acks_;
  std::vector<std::string> control_log_;

  std::atomic<bool> abort_{false};
  std::atomic<bool> stop_{false};
  std::atomic<std::uint64_t> progress_{0};
  std::atomic<std::uint64_t> source_events_{0};
  std::mutex error_m_;
  std::exception_ptr error_;

  std::mutex monitor_m_;
  std::condition_variable monitor_cv_;
  bool done_ = false;
  bool watchdog_fired_ = false;
  std::string watchdog_report_;
  std::vector<MetricsFrame> frames_;
  std::uint64_t frames_closed_ = 0;
  std::uint64_t frame_sources_ = 0;
};

}  // namespace

RunResult run_concurrent(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl,
                         const Inputs& inputs, const orchestrate::RuntimeKnobs& knobs,
                         const RunOptions& options) {
  return Engine(p, c, pl, inputs, knobs, options).run();
}

}  // namespace edgestream::runtime
