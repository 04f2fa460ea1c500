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

#include "edgestream/transforms/hash_project.hpp"

#include <string>

#include "edgestream/core/error.hpp"
#include "edgestream/core/hash.hpp"

namespace edgestream::transforms {

namespace {
constexpr std::uint64_t kSignSalt = 0x7f4a7c159e3779b9ULL;
}

HashSlot hash_slot(std::string_view token, std::size_t d, std::uint64_t salt) {
  const std::uint64_t base = fnv1a64(token);
  const std::uint64_t hb = mix64(base ^ mix64(salt));
  const std::uint64_t hs = mix64(base ^ mix64(salt ^ kSignSalt));
  return {static_cast<std::size_t>(hb % d), (hs >> 63) ? -1 : 1};
}

Event hash_project(const Event& e, std::size_t d, std::uint64_t salt) {
  if (d == 0) throw InvalidArgument("hash_project needs d >= 1");
  std::vector<double> h(d, 0.0);
  std::string token;
  for (const auto& [name, v] : e.values) {
    if (const auto* x = std::get_if<double>(&v)) {
      const auto slot = hash_slot(name, d, salt);
      h[slot.bucket] += slot.sign * *x;
    } else if (const auto* c = std::get_if<std::string>(&v)) {
      token.assign(name).append("#").append(*c);
      const auto slot = hash_slot(token, d, salt);
      h[slot.bucket] += slot.sign;
    }
  }
  Event out;
  out.ts = e.ts;
  out.key = e.key;
  out.label = e.label;
  out.instance_id = e.instance_id;
  out.source = e.source;
  for (std::size_t i = 0; i < d; ++i) out.values.emplace("h" + std::to_string(i), h[i]);
  return out;
}

std::vector<double> hash_project_vector(const std::vector<double>& x, std::size_t d, std::uint64_t salt) {
  if (d == 0) throw InvalidArgument("hash_project needs d >= 1");
  std::vector<double> h(d, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto slot = hash_slot("x" + std::to_string(i), d, salt);
    h[slot.bucket] += slot.sign * x[i];
  }
  return h;
}

}  // namespace edgestream::transforms
