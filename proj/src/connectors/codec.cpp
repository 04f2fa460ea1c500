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

#include "edgestream/connectors/codec.hpp"

#include <json.hpp>

namespace edgestream::connectors {

using nlohmann::json;
using nlohmann::ordered_json;

std::string encode_event(const Event& e) {
  ordered_json j;
  j["ts"] = e.ts;
  j["key"] = e.key;
  ordered_json values = ordered_json::object();
  // Names arrive sorted and unique, so append without the keyed lookup.
  auto& fields = values.get_ref<ordered_json::object_t&>();
  fields.reserve(e.values.size());
  for (const auto& [name, v] : e.values) {
    if (const auto* d = std::get_if<double>(&v)) {
      fields.Container::emplace_back(name, *d);
    } else if (const auto* s = std::get_if<std::string>(&v)) {
      fields.Container::emplace_back(name, *s);
    } else {
      fields.Container::emplace_back(name, nullptr);
    }
  }
  j["values"] = std::move(values);
  if (e.label) j["label"] = *e.label;
  if (e.instance_id) j["instance_id"] = *e.instance_id;
  if (!e.source.empty()) j["source"] = e.source;
  return j.dump();
}

namespace {

const std::string& expect_string(const json& v, const char* what) {
  if (!v.is_string()) throw MalformedRecord(std::string("'") + what + "' must be a string");
  return v.get_ref<const std::string&>();
}

}  // namespace

Event decode_event(std::string_view record, const Schema* schema) {
  if (record.size() > kMaxRecordBytes) {
    throw OversizeRecord("record of " + std::to_string(record.size()) + " bytes");
  }
  json j;
  try {
    j = json::parse(record);
  } catch (const json::parse_error& e) {
    throw MalformedRecord(e.what());
  }
  if (!j.is_object()) throw MalformedRecord("record must be a JSON object");

  Event e;
  bool has_ts = false, has_key = false, has_values = false;
  for (const auto& [k, v] : j.items()) {
    if (k == "ts") {
      if (v.is_number_unsigned()) {
        e.ts = static_cast<std::int64_t>(v.get<std::uint64_t>());
      } else if (v.is_number_integer()) {
        e.ts = v.get<std::int64_t>();
      } else {
        throw MalformedRecord("'ts' must be an integer");
      }
      if (e.ts < 0) throw MalformedRecord("'ts' must be >= 0");
      has_ts = true;
    } else if (k == "key") {
      e.key = expect_string(v, "key");
      has_key = true;
    } else if (k == "values") {
      if (!v.is_object()) throw MalformedRecord("'values' must be an object");
      for (const auto& [name, fv] : v.items()) {
        Value val;
        if (fv.is_number()) {
          val = fv.get<double>();
        } else if (fv.is_string()) {
          val = fv.get<std::string>();
        } else if (fv.is_null()) {
          val = Missing{};
        } else {
          throw SchemaMismatch("field '" + name + "' has unsupported kind " + fv.type_name());
        }
        if (schema && !is_missing(val)) {
          if (const FieldSpec* f = schema->find(name)) {
            const bool want_numeric = f->kind == FieldKind::kNumeric;
            if (want_numeric != is_numeric(val)) {
              throw SchemaMismatch("field '" + name + "' expected " +
                                   (want_numeric ? "numeric" : "categorical"));
            }
          }
        }
        e.values.emplace(name, std::move(val));
      }
      has_values = true;
    } else if (k == "label") {
      e.label = expect_string(v, "label");
    } else if (k == "instance_id") {
      e.instance_id = expect_string(v, "instance_id");
    } else if (k == "source") {
      e.source = expect_string(v, "source");
    } else {
      throw MalformedRecord("unknown key '" + k + "'");
    }
  }
  if (!has_ts || !has_key || !has_values) {
    throw MalformedRecord("record requires ts, key and values");
  }
  return e;
}

}  // namespace edgestream::connectors
