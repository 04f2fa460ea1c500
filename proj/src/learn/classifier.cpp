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

#include "edgestream/learn/classifier.hpp"

#include <algorithm>

namespace edgestream::learn {

std::size_t argmax(const std::vector<double>& xs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] > xs[best]) best = i;
  }
  return best;
}

std::size_t Classifier::class_index(const Event& e) const {
  if (!e.label) throw InvalidArgument("learning requires a labeled event");
  const auto& cs = classes();
  auto it = std::find(cs.begin(), cs.end(), *e.label);
  if (it == cs.end()) throw UnknownClass("label '" + *e.label + "' is not a declared class");
  return static_cast<std::size_t>(it - cs.begin());
}

}  // namespace edgestream::learn
