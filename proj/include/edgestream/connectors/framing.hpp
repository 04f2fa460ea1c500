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
#include <deque>
#include <optional>
#include <string>
#include <string_view>

#include "edgestream/core/error.hpp"
#include "edgestream/core/value.hpp"

namespace edgestream::connectors {

EDGESTREAM_DEFINE_ERROR(OversizeFrame);

/// 4-byte big-endian payload length followed by the payload.
std::string frame(std::string_view payload);

/// Binary wire encoding of an event: frame(encode_event(e)).
std::string encode_event_binary(const Event& e);

/// Incremental deframer. Feed arbitrary byte chunks; pop complete payloads.
class Deframer {
 public:
  /// Throws OversizeFrame as soon as a header announcing more than
  /// kMaxRecordBytes is seen.
  void feed(std::string_view bytes);

  std::optional<std::string> next();

  /// Bytes buffered that do not yet form a complete frame.
  std::size_t pending_bytes() const { return buf_.size() - pos_; }

 private:
  std::string buf_;
  std::size_t pos_ = 0;
};

}  // namespace edgestream::connectors
