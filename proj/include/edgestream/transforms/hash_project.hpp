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
#include <string_view>
#include <vector>

#include "edgestream/core/value.hpp"

namespace edgestream::transforms {

struct HashSlot {
  std::size_t bucket;
  int sign;  // -1 or +1
};

/// Bucket and sign for a token. The sign comes from a hash independent of
/// the bucket hash.
HashSlot hash_slot(std::string_view token, std::size_t d, std::uint64_t salt);

/// Feature hashing: numeric field `name` contributes sign * x to its bucket;
/// categorical value c contributes sign * 1 under token "name#c". Missing
/// values contribute nothing. The result carries fields h0..h{d-1} and keeps
/// ts, key, label, instance_id and source.
Event hash_project(const Event& e, std::size_t d, std::uint64_t salt);

/// Projection of a dense vector whose component i is named "x{i}".
std::vector<double> hash_project_vector(const std::vector<double>& x, std::size_t d, std::uint64_t salt);

}  // namespace edgestream::transforms
