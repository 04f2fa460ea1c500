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

#include "edgestream/learn/drift.hpp"

#include <cmath>

namespace edgestream::learn {

std::string to_string(DriftLevel level) {
  switch (level) {
    case DriftLevel::kStable: return "stable";
    case DriftLevel::kWarning: return "warning";
    case DriftLevel::kDrift: return "drift";
  }
  return "stable";
}

DriftLevel drift_level_from_string(std::string_view s) {
  if (s == "stable") return DriftLevel::kStable;
  if (s == "warning") return DriftLevel::kWarning;
  if (s == "drift") return DriftLevel::kDrift;
  throw InvalidArgument("unknown drift level '" + std::string(s) + "'");
}

DriftLevel Ddm::update(bool correct) {
  ++i_;
  const double error = correct ? 0.0 : 1.0;
  p_ += (error - p_) / static_cast<double>(i_);
  s_ = std::sqrt(p_ * (1.0 - p_) / static_cast<double>(i_));
  if (i_ < kMinObservations) {
    level_ = DriftLevel::kStable;
    return level_;
  }
  if (p_ + s_ <= p_min_ + s_min_) {
    p_min_ = p_;
    s_min_ = s_;
  }
  if (p_ + s_ > p_min_ + 3.0 * s_min_) {
    reset();
    level_ = DriftLevel::kDrift;
  } else if (p_ + s_ > p_min_ + 2.0 * s_min_) {
    level_ = DriftLevel::kWarning;
  } else {
    level_ = DriftLevel::kStable;
  }
  return level_;
}

void Ddm::reset() {
  i_ = 0;
  p_ = 0.0;
  s_ = 0.0;
  p_min_ = kInf;
  s_min_ = kInf;
}

void Ddm::save(ByteWriter& w) const {
  w.u64(i_);
  w.f64(p_);
  w.f64(s_);
  w.f64(p_min_);
  w.f64(s_min_);
  w.u8(static_cast<std::uint8_t>(level_));
}

void Ddm::load(ByteReader& r) {
  i_ = r.u64();
  p_ = r.f64();
  s_ = r.f64();
  p_min_ = r.f64();
  s_min_ = r.f64();
  const auto level = r.u8();
  if (level > 2) throw CorruptState("bad drift level");
  level_ = static_cast<DriftLevel>(level);
}

Adwin::Adwin(double delta, std::size_t max_buckets) : delta_(delta), max_buckets_(max_buckets) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("adwin delta must be in (0,1)");
  if (max_buckets < 1) throw InvalidArgument("adwin bucket multiplicity must be >= 1");
}

double Adwin::epsilon_cut(double n0, double n1, double delta) {
  const double m = 1.0 / (1.0 / n0 + 1.0 / n1);
  return std::sqrt(std::log(4.0 / delta) / (2.0 * m));
}

bool Adwin::update(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw OutOfRange("adwin input must lie in [0,1]");
  if (rows_.empty()) rows_.emplace_back();
  rows_[0].push_front(Bucket{1, x, 0.0});
  ++n_;
  sum_ += x;
  compress();
  bool drift = false;
  while (detect_once()) drift = true;
  level_ = drift ? DriftLevel::kDrift : DriftLevel::kStable;
  return drift;
}

DriftLevel Adwin::add(bool error) {
  const double before = n_ > 0 ? mean() : 0.0;
  if (update(error ? 1.0 : 0.0) && mean() <= before) level_ = DriftLevel::kStable;
  return level_;
}

void Adwin::compress() {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (rows_[k].size() <= max_buckets_) break;
    Bucket b1 = rows_[k].back();
    rows_[k].pop_back();
    Bucket b0 = rows_[k].back();
    rows_[k].pop_back();
    const double n0 = static_cast<double>(b0.size), n1 = static_cast<double>(b1.size);
    const double d = b0.sum / n0 - b1.sum / n1;
    Bucket merged{b0.size + b1.size, b0.sum + b1.sum, b0.m2 + b1.m2 + d * d * n0 * n1 / (n0 + n1)};
    if (k + 1 == rows_.size()) rows_.emplace_back();
    rows_[k + 1].push_front(merged);
  }
}

std::vector<Adwin::Bucket> Adwin::buckets() const {
  std::vector<Bucket> out;
  for (std::size_t k = rows_.size(); k-- > 0;) {
    for (auto it = rows_[k].rbegin(); it != rows_[k].rend(); ++it) out.push_back(*it);
  }
  return out;
}

double Adwin::variance() const {
  if (n_ == 0) return 0.0;
  double n = 0, mean = 0, m2 = 0;
  for (const auto& b : buckets()) {
    const double nb = static_cast<double>(b.size), mb = b.sum / nb;
    const double d = mb - mean;
    const double total = n + nb;
    m2 += b.m2 + d * d * n * nb / total;
    mean += d * nb / total;
    n = total;
  }
  return m2 / n;
}

bool Adwin::detect_once() {
  if (n_ < 2) return false;
  std::uint64_t n0 = 0;
  double s0 = 0.0;
  // Boundaries from oldest to newest; w0 is the older part.
  for (std::size_t k = rows_.size(); k-- > 0;) {
    for (auto it = rows_[k].rbegin(); it != rows_[k].rend(); ++it) {
      n0 += it->size;
      s0 += it->sum;
      const std::uint64_t n1 = n_ - n0;
      if (n1 == 0) return false;
      const double mu0 = s0 / static_cast<double>(n0);
      const double mu1 = (sum_ - s0) / static_cast<double>(n1);
      if (std::abs(mu0 - mu1) >= epsilon_cut(static_cast<double>(n0), static_cast<double>(n1), delta_)) {
        drop_oldest();
        return true;
      }
    }
  }
  return false;
}

void Adwin::drop_oldest() {
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
  auto& row = rows_.back();
  const Bucket b = row.back();
  row.pop_back();
  n_ -= b.size;
  sum_ -= b.sum;
  if (n_ == 0) sum_ = 0.0;
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
}

void Adwin::save(ByteWriter& w) const {
  w.f64(delta_);
  w.u64(max_buckets_);
  w.u64(n_);
  w.f64(sum_);
  w.u8(static_cast<std::uint8_t>(level_));
  w.u32(static_cast<std::uint32_t>(rows_.size()));
  for (const auto& row : rows_) {
    w.u32(static_cast<std::uint32_t>(row.size()));
    for (const auto& b : row) {
      w.u64(b.size);
      w.f64(b.sum);
      w.f64(b.m2);
    }
  }
}

void Adwin::load(ByteReader& r) {
  delta_ = r.f64();
  max_buckets_ = r.u64();
  n_ = r.u64();
  sum_ = r.f64();
  const auto level = r.u8();
  if (level > 2) throw CorruptState("bad drift level");
  level_ = static_cast<DriftLevel>(level);
  rows_.assign(r.u32(), {});
  for (auto& row : rows_) {
    const auto count = r.u32();
    for (std::uint32_t i = 0; i < count; ++i) {
      Bucket b;
      b.size = r.u64();
      b.sum = r.f64();
      b.m2 = r.f64();
      row.push_back(b);
    }
  }
}

std::unique_ptr<DriftDetector> make_detector(std::string_view name) {
  if (name == "ddm") return std::make_unique<Ddm>();
  if (name == "adwin") return std::make_unique<Adwin>();
  throw InvalidArgument("unknown drift detector '" + std::string(name) + "'");
}

}  // namespace edgestream::learn
