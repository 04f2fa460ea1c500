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

#include <array>
#include <utility>

#include "edgestream/core/cluster.hpp"
#include "edgestream/core/error.hpp"
#include "edgestream/core/hash.hpp"
#include "edgestream/core/pipeline.hpp"
#include "edgestream/core/schema.hpp"
#include "edgestream/core/validate.hpp"

namespace edgestream {

namespace {
constexpr std::array<std::pair<OperatorKind, std::string_view>, 15> kKindNames{{
    {OperatorKind::kSource, "source"},
    {OperatorKind::kSink, "sink"},
    {OperatorKind::kIdentity, "identity"},
    {OperatorKind::kParse, "parse"},
    {OperatorKind::kSplit, "split"},
    {OperatorKind::kImpute, "impute"},
    {OperatorKind::kNormalize, "normalize"},
    {OperatorKind::kWindowJoin, "window_join"},
    {OperatorKind::kLabelJoin, "label_join"},
    {OperatorKind::kReservoirSample, "reservoir_sample"},
    {OperatorKind::kHashProject, "hash_project"},
    {OperatorKind::kSummarize, "summarize"},
    {OperatorKind::kHoeffdingTree, "hoeffding_tree"},
    {OperatorKind::kKMeans, "kmeans"},
    {OperatorKind::kAnomaly, "anomaly"},
}};
}  // namespace

std::string_view to_string(OperatorKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<OperatorKind> operator_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

const OperatorSpec* PipelineSpec::find(std::string_view id) const {
  for (const auto& op : operators) {
    if (op.id == id) return &op;
  }
  return nullptr;
}

std::vector<const EdgeSpec*> PipelineSpec::in_edges(std::string_view id) const {
  std::vector<const EdgeSpec*> out;
  for (const auto& e : edges) {
    if (e.to == id) out.push_back(&e);
  }
  return out;
}

std::vector<const EdgeSpec*> PipelineSpec::out_edges(std::string_view id) const {
  std::vector<const EdgeSpec*> out;
  for (const auto& e : edges) {
    if (e.from == id) out.push_back(&e);
  }
  return out;
}

std::string_view to_string(Tier tier) { return tier == Tier::kCloud ? "cloud" : "edge"; }

const NodeSpec* ClusterSpec::find(std::string_view id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::optional<LinkSpec> ClusterSpec::link(std::string_view from, std::string_view to) const {
  if (from == to) {
    return LinkSpec{std::string(from), std::string(to), 0.0,
                    std::numeric_limits<double>::infinity()};
  }
  for (const auto& l : links) {
    if (l.from == from && l.to == to) return l;
  }
  for (const auto& l : links) {
    if (l.from == to && l.to == from) {
      return LinkSpec{std::string(from), std::string(to), l.latency_ms, l.bandwidth_mbps};
    }
  }
  return std::nullopt;
}

const std::string& Placement::node_of(std::string_view op) const {
  auto it = assignment.find(op);
  if (it == assignment.end()) throw InvalidArgument("operator not placed: " + std::string(op));
  return it->second;
}

const FieldSpec* Schema::find(std::string_view name) const {
  for (const auto& f : fields) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::vector<Violation> validate_schema(const Schema& schema) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < schema.fields.size(); ++i) {
    const auto& f = schema.fields[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (schema.fields[j].name == f.name) {
        out.push_back({"duplicate-id", f.name, "duplicate field name '" + f.name + "'"});
      }
    }
    if (f.kind == FieldKind::kCategorical && !f.categories) {
      out.push_back({"missing-categories", f.name,
                     "categorical field '" + f.name + "' must list its categories"});
    }
  }
  if (schema.label_field && !schema.find(*schema.label_field)) {
    out.push_back({"unknown-label-field", *schema.label_field,
                   "label_field '" + *schema.label_field + "' is not a declared field"});
  }
  return out;
}

std::uint64_t schema_fingerprint(const Schema& schema) {
  std::uint64_t h = kFnvOffset;
  auto feed = [&h](std::string_view s) {
    h = fnv1a64(s, h);
    h = fnv1a64(std::string_view("\x1f", 1), h);
  };
  for (const auto& f : schema.fields) {
    feed(f.name);
    feed(f.kind == FieldKind::kNumeric ? "n" : "c");
    if (f.categories) {
      for (const auto& c : *f.categories) feed(c);
    }
    feed("|");
  }
  feed(schema.label_field.value_or(""));
  return h;
}

Schema infer_schema(const Event& e) {
  Schema s;
  for (const auto& [name, v] : e.values) {
    s.fields.push_back({name, is_categorical(v) ? FieldKind::kCategorical : FieldKind::kNumeric,
                        std::nullopt});
  }
  return s;
}

}  // namespace edgestream
