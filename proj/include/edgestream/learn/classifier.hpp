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
#include <string>
#include <vector>

#include "edgestream/core/error.hpp"
#include "edgestream/core/value.hpp"

namespace edgestream::learn {

EDGESTREAM_DEFINE_ERROR(UnknownClass);

struct Prediction {
  std::size_t cls = 0;
  std::vector<double> probs;
};

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(const std::vector<double>& xs);

/// Incremental classifier over events with string labels.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual const std::vector<std::string>& classes() const = 0;
  virtual Prediction predict(const Event& e) const = 0;
  virtual void learn(const Event& e) = 0;
  virtual void reset() = 0;

  /// Index of e.label; throws UnknownClass.
  std::size_t class_index(const Event& e) const;
};

}  // namespace edgestream::learn
