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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "edgestream/learn/anomaly.hpp"
#include "edgestream/learn/changelog.hpp"
#include "edgestream/learn/hoeffding_tree.hpp"
#include "edgestream/learn/kmeans.hpp"

namespace edgestream::learn {

EDGESTREAM_DEFINE_ERROR(FingerprintMismatch);

using Learner = std::variant<HoeffdingTree, KMeans, AnomalyScorer>;

struct ModelState {
  static constexpr std::uint8_t kVersion = 1;

  std::uint64_t fingerprint = 0;
  Learner learner;
  ChangeLog changes;

  friend bool operator==(const ModelState&, const ModelState&) = default;
};

std::string learner_kind(const Learner& l);

/// version byte, 8-byte fingerprint, learner tag and state, change log.
std::string serialize_model(const ModelState& m);
ModelState deserialize_model(std::string_view bytes);
/// As above; throws FingerprintMismatch unless the stored fingerprint equals `expected`.
ModelState deserialize_model(std::string_view bytes, std::uint64_t expected);

/// Deterministic text report: rules, centroids or field table, change timeline.
std::string explain_model(const ModelState& m);

/// Tree structure as rendered by explain_model.
struct RuleNode {
  bool leaf = true;
  std::string field;
  FieldKind kind = FieldKind::kNumeric;
  double threshold = 0.0;
  std::string category;
  bool missing_yes = true;
  std::string cls;
  std::uint64_t n = 0;
  std::vector<RuleNode> children;  // yes, no

  bool operator==(const RuleNode&) const = default;
};

RuleNode rule_tree(const HoeffdingTree& tree);
/// Parses the rules section of an explain_model report.
RuleNode parse_rules(std::string_view report);

}  // namespace edgestream::learn
