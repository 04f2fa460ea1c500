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

#include "edgestream/runtime/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace edgestream::runtime {

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  rank = std::clamp<std::size_t>(rank, 1, v.size());
  return v[rank - 1];
}

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_metrics_header(std::ostream& out) {
  out << "interval,node,op,events_in,events_out,queue_depth,cpu_util,p50_ms,p95_ms\n";
}

void write_metrics(std::ostream& out, const MetricsFrame& f) {
  for (const auto& m : f.ops) {
    out << f.interval << ',' << m.node << ',' << m.op << ',' << m.events_in << ',' << m.events_out
        << ',' << m.queue_depth << ',' << num(m.cpu_util) << ',' << num(m.p50_ms) << ','
        << num(m.p95_ms) << '\n';
  }
}

std::vector<orchestrate::UtilizationSample> utilization_samples(const MetricsFrame& f) {
  std::vector<orchestrate::UtilizationSample> out;
  for (const auto& [node, util] : f.node_util) {
    orchestrate::UtilizationSample s;
    s.node = node;
    s.interval = f.interval;
    s.cpu_util = util;
    for (const auto& m : f.ops) {
      if (m.node != node) continue;
      s.queue_depth += m.queue_depth;
      s.events_processed += m.events_in;
    }
    out.push_back(std::move(s));
  }
  return out;
}

FrameBuilder::FrameBuilder(const Graph& g, const ClusterSpec& c, double interval_s)
    : g_(g),
      c_(c),
      interval_s_(interval_s),
      in_(g.size()),
      out_(g.size()),
      in_at_open_(g.size()),
      depth_(g.size()),
      lat_(g.size()) {
  if (!(interval_s > 0)) throw InvalidArgument("metrics interval must be positive");
}

void FrameBuilder::received(std::size_t op, std::uint64_t n) { in_[op] += n; }
void FrameBuilder::emitted(std::size_t op, std::uint64_t n) { out_[op] += n; }

void FrameBuilder::sync_counts(const std::vector<std::uint64_t>& in, const std::vector<std::uint64_t>& out,
                               std::uint64_t source_events) {
  if (in.size() != in_.size() || out.size() != out_.size()) throw InvalidArgument("counter size mismatch");
  in_ = in;
  out_ = out;
  sources_ = source_events;
}

void FrameBuilder::restore_counts(std::vector<std::uint64_t> in, std::vector<std::uint64_t> out) {
  if (in.size() != in_.size() || out.size() != out_.size()) throw InvalidArgument("counter size mismatch");
  in_ = std::move(in);
  out_ = std::move(out);
  in_at_open_ = in_;
}

MetricsFrame FrameBuilder::close(std::uint64_t interval, const Placement& pl,
                                 const std::map<std::string, double>* node_util) {
  MetricsFrame f;
  f.interval = interval;
  for (const auto& n : c_.nodes) f.node_util[n.id] = 0.0;
  if (node_util != nullptr) {
    for (const auto& [n, u] : *node_util) f.node_util[n] = u;
  } else {
    for (std::size_t i = 0; i < g_.size(); ++i) {
      const NodeSpec* node = c_.find(pl.node_of(g_.id(i)));
      double eps = static_cast<double>(in_[i] - in_at_open_[i]) / interval_s_;
      f.node_util[node->id] += g_.spec(i).cpu_demand * eps / 1000.0 / node->cpu_capacity;
    }
  }
  for (std::size_t i = 0; i < g_.size(); ++i) {
    OpMetrics m;
    m.op = g_.id(i);
    m.node = pl.node_of(m.op);
    m.events_in = in_[i];
    m.events_out = out_[i];
    m.queue_depth = depth_[i];
    m.cpu_util = f.node_util[m.node];
    if (!lat_[i].empty()) {
      m.p50_ms = percentile(lat_[i], 0.50);
      m.p95_ms = percentile(lat_[i], 0.95);
    } else if (in_[i] > in_at_open_[i]) {
      double base = g_.spec(i).cpu_demand / c_.find(m.node)->cpu_capacity;
      double lat = m.cpu_util < 1.0 ? base / (1.0 - m.cpu_util) : std::numeric_limits<double>::infinity();
      m.p50_ms = m.p95_ms = lat;
    }
    f.ops.push_back(std::move(m));
    lat_[i].clear();
  }
  f.latency_ms = std::move(e2e_);
  e2e_.clear();
  f.throughput_eps = static_cast<double>(sources_) / interval_s_;
  sources_ = 0;
  in_at_open_ = in_;
  return f;
}

}  // namespace edgestream::runtime
