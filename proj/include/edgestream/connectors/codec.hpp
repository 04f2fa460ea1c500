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

#include <string>
#include <string_view>

#include "edgestream/core/error.hpp"
#include "edgestream/core/schema.hpp"
#include "edgestream/core/value.hpp"

namespace edgestream::connectors {

EDGESTREAM_DEFINE_ERROR(MalformedRecord);
EDGESTREAM_DEFINE_ERROR(SchemaMismatch);
EDGESTREAM_DEFINE_ERROR(OversizeRecord);

/// Largest accepted record or frame payload (16 MiB).
inline constexpr std::size_t kMaxRecordBytes = 16u << 20;

/// Canonical text record: one JSON object with keys in the order
/// ts, key, values, label, instance_id, source. Optional keys (and an
/// empty source) are omitted. No trailing newline.
std::string encode_event(const Event& e);

/// Strict inverse of encode_event. Numbers decode as numeric, strings as
/// categorical, null as missing; nothing is coerced. When `schema` is given,
/// declared fields must carry the declared kind (missing is always allowed).
Event decode_event(std::string_view record, const Schema* schema = nullptr);

}  // namespace edgestream::connectors
