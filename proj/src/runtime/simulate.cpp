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

#include "edgestream/runtime/simulate.hpp"

#include <cmath>
#include <limits>

#include "common.hpp"
#include "edgestream/core/rng.hpp"
#include "edgestream/orchestrate/cost.hpp"

namespace edgestream::runtime {

using nlohmann::json;

void VirtualClock::schedule(double at, Action action) {
  if (!(at >= now_)) throw InvalidArgument("cannot schedule into the past");
  heap_.push({at, seq_++, std::move(action)});
}

bool VirtualClock::step() {
  if (heap_.empty()) return false;
  Entry e = heap_.top();
  heap_.pop();
  now_ = e.at;
  e.action();
  return true;
}

void VirtualClock::run_until(double t) {
  while (!heap_.empty() && heap_.top().at <= t) step();
  if (t > now_) now_ = t;
}

std::vector<WorkloadStep> workload_from_json(const json& j) {
  if (j.is_number()) {
    if (!(j.get<double>() >= 0)) throw ConfigError("workload rate must be >= 0");
    return {{0.0, j.get<double>()}};
  }
  if (!j.is_array()) throw ConfigError("workload must be a rate or a list of {at_s, eps}");
  std::vector<WorkloadStep> out;
  for (const auto& s : j) {
    if (!s.is_object() || !s.contains("at_s") || !s.contains("eps") || !s["at_s"].is_number() ||
        !s["eps"].is_number() || s.size() != 2) {
      throw ConfigError("workload steps must be {\"at_s\": t, \"eps\": rate}");
    }
    WorkloadStep w{s["at_s"].get<double>(), s["eps"].get<double>()};
    if (!(w.at_s >= 0) || !(w.eps >= 0)) throw ConfigError("workload times and rates must be >= 0");
    if (!out.empty() && w.at_s <= out.back().at_s) throw ConfigError("workload steps must be in increasing time");
    out.push_back(w);
  }
  return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Job {
  std::size_t op;
  double born;
  double arrived;
};

/// Egalitarian processor sharing, tracked in attained-service time so each
/// arrival and departure costs O(log n).
struct Server {
  struct Entry {
    double tag;
    std::uint64_t seq;
    Job job;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.tag != b.tag ? a.tag > b.tag : a.seq > b.seq;
    }
  };
  double attained = 0.0;
  double last = 0.0;
  std::uint64_t seq = 0;
  std::uint64_t version = 0;
  std::priority_queue<Entry, std::vector<Entry>, Later> jobs;

  void advance(double now) {
    if (!jobs.empty()) attained += (now - last) / static_cast<double>(jobs.size());
    last = now;
  }
};

class Simulation {
 public:
  Simulation(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl, const SimOptions& o)
      : g_(p), c_(c), pl_(pl), o_(o), rng_(o.seed), fb_(g_, c_, o.interval_s) {
    detail::require_placement(p, c, pl);
    if (!(o.duration_s >= 0) || !(o.interval_s > 0)) throw InvalidArgument("bad simulation duration or interval");
    for (std::size_t k = 0; k < o.workload.size(); ++k) {
      if (!(o.workload[k].eps >= 0) || (k > 0 && o.workload[k].at_s <= o.workload[k - 1].at_s)) {
        throw InvalidArgument("workload steps must have increasing times and rates >= 0");
      }
    }
    for (const auto& n : c.nodes) servers_[n.id];
    sel_.resize(g_.size());
    held_.resize(g_.size());
    present_.assign(g_.size(), 0);
    moving_.assign(g_.size(), false);
    for (std::size_t i = 0; i < g_.size(); ++i) sel_[i] = orchestrate::selectivity(g_.spec(i));
  }

  SimResult run() {
    const double end = o_.duration_s * 1000.0;
    for (auto s : g_.sources()) schedule_arrival(s, 0.0);
    const auto frames = static_cast<std::uint64_t>(std::floor(o_.duration_s / o_.interval_s + 1e-9));
    for (std::uint64_t k = 1; k <= frames; ++k) {
      clock_.schedule(static_cast<double>(k) * o_.interval_s * 1000.0, [this, k] { close_interval(k); });
    }
    clock_.run_until(end);
    res_.placement = pl_;
    for (std::size_t i = 0; i < g_.size(); ++i) res_.arrivals[g_.id(i)] = fb_.events_in(i);
    res_.mean_latency_ms = res_.completed > 0 ? latency_sum_ / static_cast<double>(res_.completed) : 0.0;
    return std::move(res_);
  }

 private:
  double rate_at(double t_ms, double* until) const {
    double rate = 0.0;
    *until = kInf;
    for (const auto& w : o_.workload) {
      if (w.at_s * 1000.0 <= t_ms) {
        rate = w.eps;
      } else {
        *until = w.at_s * 1000.0;
        break;
      }
    }
    return stopped_ ? 0.0 : rate;
  }

  /// Next Poisson arrival after `t` under the piecewise-constant rate.
  double next_arrival(double t) {
    double need = rng_.exponential(1.0);
    while (true) {
      double until;
      const double rate = rate_at(t, &until);
      const double mass = rate * (until - t) / 1000.0;
      if (rate > 0 && need <= mass) return t + need / rate * 1000.0;
      if (until == kInf) return kInf;
      need -= mass;
      t = until;
    }
  }

  void schedule_arrival(std::size_t src, double from) {
    const double t = next_arrival(from);
    if (!(t <= o_.duration_s * 1000.0)) return;
    clock_.schedule(t, [this, src] {
      if (stopped_) return;
      fb_.source_event();
      const double now = clock_.now();
      arrive(Job{src, now, now});
      schedule_arrival(src, now);
    });
  }

  void arrive(Job job) {
    const std::size_t i = job.op;
    fb_.received(i);
    ++present_[i];
    if (moving_[i]) {
      held_[i].push_back(job);
      return;
    }
    start(job);
  }

  void start(const Job& job) {
    const NodeSpec& node = *c_.find(pl_.node_of(g_.id(job.op)));
    const double work = rng_.exponential(g_.spec(job.op).cpu_demand / node.cpu_capacity);
    offered_[node.id] += work;
    Server& s = servers_.at(node.id);
    s.advance(clock_.now());
    s.jobs.push({s.attained + work, s.seq++, job});
    reschedule(node.id);
  }

  void reschedule(const std::string& node) {
    Server& s = servers_.at(node);
    const std::uint64_t v = ++s.version;
    if (s.jobs.empty()) return;
    const double at = clock_.now() + std::max(0.0, s.jobs.top().tag - s.attained) * static_cast<double>(s.jobs.size());
    clock_.schedule(at, [this, node, v] {
      Server& srv = servers_.at(node);
      if (srv.version != v) return;
      srv.advance(clock_.now());
      Job job = srv.jobs.top().job;
      srv.jobs.pop();
      reschedule(node);
      complete(job);
    });
  }

  void complete(const Job& job) {
    const std::size_t i = job.op;
    const double now = clock_.now();
    --present_[i];
    fb_.sojourn(i, now - job.arrived);
    const double s = sel_[i];
    auto copies = static_cast<std::uint64_t>(std::floor(s));
    if (rng_.bernoulli(s - std::floor(s))) ++copies;
    fb_.emitted(i, copies);
    if (g_.is_sink(i)) {
      for (std::uint64_t k = 0; k < copies; ++k) {
        fb_.end_to_end(now - job.born);
        latency_sum_ += now - job.born;
        ++res_.completed;
      }
      return;
    }
    const std::string& here = pl_.node_of(g_.id(i));
    for (std::uint64_t k = 0; k < copies; ++k) {
      for (auto d : g_.downstream(i)) {
        const double delay = link_delay(here, pl_.node_of(g_.id(d)), edge_bytes(i, d));
        Job next{d, job.born, 0.0};
        clock_.schedule(now + delay, [this, next]() mutable {
          next.arrived = clock_.now();
          arrive(next);
        });
      }
    }
  }

  double edge_bytes(std::size_t from, std::size_t to) const {
    for (const auto* e : g_.pipeline().out_edges(g_.id(from))) {
      if (e->to == g_.id(to)) return e->est_bytes_per_event;
    }
    return 0.0;
  }

  double link_delay(const std::string& a, const std::string& b, double bytes) const {
    if (a == b) return 0.0;
    auto link = c_.find(a) && c_.find(b) ? c_.link(a, b) : std::nullopt;
    if (!link) throw InvalidArgument("nodes '" + a + "' and '" + b + "' are not linked");
    return link->latency_ms + bytes * 8.0 / (link->bandwidth_mbps * 1000.0);
  }

  void close_interval(std::uint64_t k) {
    const double span = o_.interval_s * 1000.0;
    std::map<std::string, double> util;
    for (const auto& n : c_.nodes) util[n.id] = offered_[n.id] / span;
    offered_.clear();
    for (std::size_t i = 0; i < g_.size(); ++i) fb_.queue_depth(i, present_[i]);
    res_.frames.push_back(fb_.close(k, pl_, &util));
    if (!o_.on_interval) return;
    for (const auto& msg : o_.on_interval(res_.frames.back(), pl_)) apply(msg);
  }

  void log(const std::string& line) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "t_ms=%.3f ", clock_.now());
    res_.log.push_back(buf + line);
  }

  void apply(const ControlMessage& msg) {
    if (msg.seq != next_seq_) {
      throw OutOfOrderControl("expected control seq " + std::to_string(next_seq_) + ", got " +
                              std::to_string(msg.seq));
    }
    std::size_t i = 0;
    if (msg.kind != ControlKind::kShutdown) i = g_.index(msg.target);
    ControlAck ack{msg.seq, msg.kind, msg.target, true, {}, {}};
    switch (msg.kind) {
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
        if (moving_[i]) throw InvalidArgument("operator '" + msg.target + "' is already migrating");
        const auto link = c_.link(from, to->get<std::string>());
        const double stall = g_.spec(i).state_size * 8.0 / link->bandwidth_mbps * 1000.0 + link->latency_ms;
        pl_.assignment[msg.target] = to->get<std::string>();
        moving_[i] = true;
        clock_.schedule(clock_.now() + stall, [this, i] {
          moving_[i] = false;
          auto held = std::move(held_[i]);
          held_[i].clear();
          for (const auto& job : held) start(job);
        });
        res_.migration_stall_ms += stall;
        char buf[48];
        std::snprintf(buf, sizeof buf, " stall_ms=%.3f", stall);
        ack.detail = "from=" + from + " to=" + to->get<std::string>() + buf;
        break;
      }
      case ControlKind::kSetSampleRate: {
        auto rate = msg.payload.find("rate");
        if (rate == msg.payload.end() || !rate->is_number() || rate->get<double>() < 0 || rate->get<double>() > 1) {
          throw InvalidArgument("simulated sampling is retargeted with {\"rate\": p}");
        }
        sel_[i] = rate->get<double>();
        ack.detail = "payload=" + msg.payload.dump();
        break;
      }
      case ControlKind::kSnapshot:
        ack.applied = false;
        ack.detail = "no operator state in simulation";
        break;
      case ControlKind::kShutdown:
        stopped_ = true;
        break;
    }
    ++next_seq_;
    std::string line = "control seq=" + std::to_string(msg.seq) + " kind=" + std::string(to_string(msg.kind));
    if (!msg.target.empty()) line += " target=" + msg.target;
    if (!ack.detail.empty()) line += " " + ack.detail;
    log(line);
    res_.acks.push_back(std::move(ack));
  }

  Graph g_;
  const ClusterSpec& c_;
  Placement pl_;
  const SimOptions& o_;
  Rng rng_;
  FrameBuilder fb_;
  VirtualClock clock_;
  std::map<std::string, Server> servers_;
  std::map<std::string, double> offered_;
  std::vector<double> sel_;
  std::vector<std::vector<Job>> held_;
  std::vector<std::uint64_t> present_;
  std::vector<bool> moving_;
  std::uint64_t next_seq_ = 1;
  bool stopped_ = false;
  double latency_sum_ = 0.0;
  SimResult res_;
};

}  // namespace

SimResult run_simulated(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl,
                        const SimOptions& options) {
  return Simulation(p, c, pl, options).run();
}

}  // namespace edgestream::runtime
