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
#include <map>
#include <optional>
#include <string>

#include "edgestream/core/bytes.hpp"
#include "edgestream/core/value.hpp"

namespace edgestream::transforms {

/// Welford accumulator for one numeric field.
struct NumericStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the mean
  double min = 0.0;
  double max = 0.0;
  double last = 0.0;

  void add(double x);
  /// Chan et al. pairwise combination; `other` is treated as the later data.
  void merge(const NumericStats& other);
  /// Sample variance M2/(n-1); 0 when n < 2.
  double variance() const;
  double stddev() const;

  bool operator==(const NumericStats&) const = default;
};

struct CategoricalStats {
  std::map<std::string, std::uint64_t> counts;
  std::string last;

  void add(const std::string& v);
  void merge(const CategoricalStats& other);
  /// Most frequent category; ties by lexicographic order.
  const std::string* mode() const;
  std::uint64_t total() const;

  bool operator==(const CategoricalStats&) const = default;
};

/// Per-field running statistics over the non-missing values of a stream.
class RunningStats {
 public:
  void observe(const Event& e);
  void observe(const std::string& field, const Value& v);
  void merge(const RunningStats& other);

  const NumericStats* numeric(std::string_view field) const;
  const CategoricalStats* categorical(std::string_view field) const;

  const std::map<std::string, NumericStats, std::less<>>& numeric_fields() const { return numeric_; }
  const std::map<std::string, CategoricalStats, std::less<>>& categorical_fields() const {
    return categorical_;
  }

  void save(ByteWriter& w) const;
  static RunningStats load(ByteReader& r);

  bool operator==(const RunningStats&) const = default;

 private:
  std::map<std::string, NumericStats, std::less<>> numeric_;
  std::map<std::string, CategoricalStats, std::less<>> categorical_;
};

}  // namespace edgestream::transforms
