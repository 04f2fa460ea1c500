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
#include <string>
#include <vector>

#include "edgestream/core/bytes.hpp"
#include "edgestream/core/error.hpp"
#include "edgestream/core/value.hpp"

namespace edgestream::learn {

EDGESTREAM_DEFINE_ERROR(DimensionalityMismatch);

/// Sequential k-means. The first k events seed the centroids; afterwards the
/// nearest centroid moves toward each event at rate 1/n_c.
class KMeans {
 public:
  explicit KMeans(std::size_t k);

  void update(const Event& e);
  /// Nearest centroid (Euclidean, ties to lowest id); 0 before any update.
  std::size_t assign(const Event& e) const;

  std::size_t k() const { return k_; }
  const std::vector<std::string>& fields() const { return fields_; }
  const std::vector<std::vector<double>>& centroids() const { return centroids_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  void save(ByteWriter& w) const;
  static KMeans load(ByteReader& r);

  bool operator==(const KMeans&) const = default;

 private:
  std::vector<double> features(const Event& e) const;
  std::size_t nearest(const std::vector<double>& x) const;

  std::size_t k_;
  std::vector<std::string> fields_;
  std::vector<std::vector<double>> centroids_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace edgestream::learn
