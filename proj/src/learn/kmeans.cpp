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

#include "edgestream/learn/kmeans.hpp"

namespace edgestream::learn {

KMeans::KMeans(std::size_t k) : k_(k) {
  if (k == 0) throw InvalidArgument("k-means needs k >= 1");
}

std::vector<double> KMeans::features(const Event& e) const {
  std::vector<double> x;
  x.reserve(e.values.size());
  std::size_t i = 0;
  for (const auto& [name, v] : e.values) {
    if (!is_numeric(v)) throw DimensionalityMismatch("field '" + name + "' is not numeric");
    if (!fields_.empty() && (i >= fields_.size() || fields_[i] != name)) {
      throw DimensionalityMismatch("event fields differ from the fitted fields");
    }
    x.push_back(std::get<double>(v));
    ++i;
  }
  if (!fields_.empty() && x.size() != fields_.size()) {
    throw DimensionalityMismatch("event has " + std::to_string(x.size()) + " fields, expected " +
                                 std::to_string(fields_.size()));
  }
  return x;
}

std::size_t KMeans::nearest(const std::vector<double>& x) const {
  std::size_t best = 0;
  double best_d = 0;
  for (std::size_t c = 0; c < centroids_.size(); ++c) {
    double d = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double diff = x[j] - centroids_[c][j];
      d += diff * diff;
    }
    if (c == 0 || d < best_d) {
      best = c;
      best_d = d;
    }
  }
  return best;
}

void KMeans::update(const Event& e) {
  std::vector<double> x = features(e);
  if (fields_.empty()) {
    for (const auto& [name, v] : e.values) fields_.push_back(name);
    if (fields_.empty()) throw DimensionalityMismatch("event has no numeric fields");
  }
  if (centroids_.size() < k_) {
    centroids_.push_back(std::move(x));
    counts_.push_back(1);
    return;
  }
  const std::size_t c = nearest(x);
  const double n = static_cast<double>(++counts_[c]);
  for (std::size_t j = 0; j < x.size(); ++j) centroids_[c][j] += (x[j] - centroids_[c][j]) / n;
}

std::size_t KMeans::assign(const Event& e) const {
  if (centroids_.empty()) return 0;
  return nearest(features(e));
}

void KMeans::save(ByteWriter& w) const {
  w.u64(k_);
  w.u32(static_cast<std::uint32_t>(fields_.size()));
  for (const auto& f : fields_) w.str(f);
  w.u32(static_cast<std::uint32_t>(centroids_.size()));
  for (std::size_t c = 0; c < centroids_.size(); ++c) {
    w.u64(counts_[c]);
    for (double x : centroids_[c]) w.f64(x);
  }
}

KMeans KMeans::load(ByteReader& r) {
  const auto k = r.u64();
  if (k == 0) throw CorruptState("k-means state with k = 0");
  KMeans m(k);
  m.fields_.resize(r.u32());
  for (auto& f : m.fields_) f = r.str();
  const auto n = r.u32();
  if (n > k) throw CorruptState("more centroids than k");
  for (std::uint32_t c = 0; c < n; ++c) {
    m.counts_.push_back(r.u64());
    std::vector<double> x(m.fields_.size());
    for (double& v : x) v = r.f64();
    m.centroids_.push_back(std::move(x));
  }
  return m;
}

}  // namespace edgestream::learn
