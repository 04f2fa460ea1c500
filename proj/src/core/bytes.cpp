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

#include "edgestream/core/bytes.hpp"

#include <bit>
#include <cstring>

#include "edgestream/core/error.hpp"

namespace edgestream {

namespace {
enum ValueTag : std::uint8_t { kTagMissing = 0, kTagNumeric = 1, kTagCategorical = 2 };
}

void ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::str(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  buf_.append(s);
}

void ByteWriter::opt_str(const std::optional<std::string>& s) {
  boolean(s.has_value());
  if (s) str(*s);
}

void ByteWriter::value(const Value& v) {
  if (std::holds_alternative<Missing>(v)) {
    u8(kTagMissing);
  } else if (const auto* d = std::get_if<double>(&v)) {
    u8(kTagNumeric);
    f64(*d);
  } else {
    u8(kTagCategorical);
    str(std::get<std::string>(v));
  }
}

void ByteWriter::event(const Event& e) {
  i64(e.ts);
  str(e.key);
  u32(static_cast<std::uint32_t>(e.values.size()));
  for (const auto& [name, v] : e.values) {
    str(name);
    value(v);
  }
  opt_str(e.label);
  opt_str(e.instance_id);
  str(e.source);
}

void ByteReader::need(std::size_t n) const {
  if (data_.size() - pos_ < n) throw CorruptState("truncated state");
}

std::uint8_t ByteReader::u8() {
  need(1);
  return static_cast<std::uint8_t>(data_[pos_++]);
}

std::uint32_t ByteReader::u32() {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
  return v;
}

std::uint64_t ByteReader::u64() {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
  return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

std::string ByteReader::str() {
  const std::uint32_t n = u32();
  return std::string(raw(n));
}

std::optional<std::string> ByteReader::opt_str() {
  if (!boolean()) return std::nullopt;
  return str();
}

Value ByteReader::value() {
  switch (u8()) {
    case kTagMissing: return Missing{};
    case kTagNumeric: return f64();
    case kTagCategorical: return str();
    default: throw CorruptState("unknown value tag");
  }
}

Event ByteReader::event() {
  Event e;
  e.ts = i64();
  e.key = str();
  const std::uint32_t n = u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string name = str();
    e.values.emplace(std::move(name), value());
  }
  e.label = opt_str();
  e.instance_id = opt_str();
  e.source = str();
  return e;
}

std::string_view ByteReader::raw(std::size_t n) {
  need(n);
  auto out = data_.substr(pos_, n);
  pos_ += n;
  return out;
}

}  // namespace edgestream
