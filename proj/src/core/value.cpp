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

#include "edgestream/core/value.hpp"

#include <cmath>

namespace edgestream {

bool event_is_valid(const Event& e) {
  if (e.ts < 0) return false;
  for (const auto& [name, v] : e.values) {
    if (const auto* d = std::get_if<double>(&v); d && !std::isfinite(*d)) return false;
  }
  return true;
}

}  // namespace edgestream
