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

#include "edgestream/transforms/running_stats.hpp"

#include <algorithm>
#include <cmath>

namespace edgestream::transforms {

void NumericStats::add(double x) {
  ++n;
  if (n == 1) {
    mean = x;
    m2 = 0.0;
    min = max = x;
  } else {
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
    min = std::min(min, x);
    max = std::max(max, x);
  }
  last = x;
}

void NumericStats::merge(const NumericStats& other) {
  if (other.n == 0) return;
  if (n == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n);
  const double nb = static_cast<double>(other.n);
  const double total = na + nb;
  const double delta = other.mean - mean;
  mean = (na * mean + nb * other.mean) / total;
  m2 = m2 + other.m2 + delta * delta * na * nb / total;
  n += other.n;
  min = std::min(min, other.min);
  max = std::max(max, other.max);
  last = other.last;
}

double NumericStats::variance() const {
  if (n < 2) return 0.0;
  return std::max(0.0, m2 / static_cast<double>(n - 1));
}

double NumericStats::stddev() const { return std::sqrt(variance()); }

void CategoricalStats::add(const std::string& v) {
  ++counts[v];
  last = v;
}

void CategoricalStats::merge(const CategoricalStats& other) {
  for (const auto& [k, c] : other.counts) counts[k] += c;
  if (!other.counts.empty()) last = other.last;
}

const std::string* CategoricalStats::mode() const {
  const std::string* best = nullptr;
  std::uint64_t best_count = 0;
  for (const auto& [k, c] : counts) {
    if (c > best_count) {
      best = &k;
      best_count = c;
    }
  }
  return best;
}

std::uint64_t CategoricalStats::total() const {
  std::uint64_t t = 0;
  for (const auto& [k, c] : counts) t += c;
  return t;
}

void RunningStats::observe(const Event& e) {
  for (const auto& [name, v] : e.values) observe(name, v);
}

void RunningStats::observe(const std::string& field, const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    auto it = numeric_.find(field);
    if (it == numeric_.end()) it = numeric_.emplace(field, NumericStats{}).first;
    it->second.add(*d);
  } else if (const auto* s = std::get_if<std::string>(&v)) {
    auto it = categorical_.find(field);
    if (it == categorical_.end()) it = categorical_.emplace(field, CategoricalStats{}).first;
    it->second.add(*s);
  }
}

void RunningStats::merge(const RunningStats& other) {
  for (const auto& [k, s] : other.numeric_) numeric_[k].merge(s);
  for (const auto& [k, s] : other.categorical_) categorical_[k].merge(s);
}

const NumericStats* RunningStats::numeric(std::string_view field) const {
  auto it = numeric_.find(field);
  return it == numeric_.end() ? nullptr : &it->second;
}

const CategoricalStats* RunningStats::categorical(std::string_view field) const {
  auto it = categorical_.find(field);
  return it == categorical_.end() ? nullptr : &it->second;
}

void RunningStats::save(ByteWriter& w) const {
  w.u32(static_cast<std::uint32_t>(numeric_.size()));
  for (const auto& [k, s] : numeric_) {
    w.str(k);
    w.u64(s.n);
    w.f64(s.mean);
    w.f64(s.m2);
    w.f64(s.min);
    w.f64(s.max);
    w.f64(s.last);
  }
  w.u32(static_cast<std::uint32_t>(categorical_.size()));
  for (const auto& [k, s] : categorical_) {
    w.str(k);
    w.u32(static_cast<std::uint32_t>(s.counts.size()));
    for (const auto& [c, n] : s.counts) {
      w.str(c);
      w.u64(n);
    }
    w.str(s.last);
  }
}

RunningStats RunningStats::load(ByteReader& r) {
  RunningStats out;
  for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
    std::string k = r.str();
    NumericStats s;
    s.n = r.u64();
    s.mean = r.f64();
    s.m2 = r.f64();
    s.min = r.f64();
    s.max = r.f64();
    s.last = r.f64();
    out.numeric_.emplace(std::move(k), s);
  }
  for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
    std::string k = r.str();
    CategoricalStats s;
    for (std::uint32_t j = 0, m = r.u32(); j < m; ++j) {
      std::string c = r.str();
      s.counts.emplace(std::move(c), r.u64());
    }
    s.last = r.str();
    out.categorical_.emplace(std::move(k), std::move(s));
  }
  return out;
}

}  // namespace edgestream::transforms
