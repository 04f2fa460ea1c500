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

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "edgestream/core/error.hpp"
#include "edgestream/core/rng.hpp"

namespace edgestream::transforms {

/// Uniform fixed-size sample of a stream (Algorithm R).
template <typename T>
class Reservoir {
 public:
  explicit Reservoir(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw InvalidArgument("reservoir capacity must be >= 1");
    items_.reserve(capacity);
  }

  /// Returns true when `item` entered the sample.
  bool add(T item, Rng& rng) {
    ++seen_;
    if (items_.size() < capacity_) {
      items_.push_back(std::move(item));
      return true;
    }
    // Slot j is uniform over [0, n); the item is kept with probability k/n.
    const std::uint64_t j = rng.below(seen_);
    if (j < capacity_) {
      items_[j] = std::move(item);
      return true;
    }
    return false;
  }

  /// Retargets k. Shrinking keeps a uniform subset of the current sample.
  void set_capacity(std::size_t capacity, Rng& rng) {
    if (capacity == 0) throw InvalidArgument("reservoir capacity must be >= 1");
    while (items_.size() > capacity) {
      const std::uint64_t j = rng.below(items_.size());
      items_[j] = std::move(items_.back());
      items_.pop_back();
    }
    capacity_ = capacity;
  }

  const std::vector<T>& items() const { return items_; }
  std::uint64_t seen() const { return seen_; }
  std::size_t capacity() const { return capacity_; }

  void restore(std::size_t capacity, std::uint64_t seen, std::vector<T> items) {
    capacity_ = capacity;
    seen_ = seen;
    items_ = std::move(items);
  }

 private:
  std::size_t capacity_;
  std::vector<T> items_;
  std::uint64_t seen_ = 0;
};

}  // namespace edgestream::transforms
