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
#include <map>
#include <string>
#include <vector>

#include "edgestream/core/bytes.hpp"
#include "edgestream/core/schema.hpp"
#include "edgestream/learn/classifier.hpp"

namespace edgestream::learn {

struct HoeffdingParams {
  double delta = 1e-7;
  std::uint64_t n_min = 200;
  double tau = 0.05;
  std::uint32_t bins = 10;
  std::uint32_t max_depth = 20;

  bool operator==(const HoeffdingParams&) const = default;
};

/// Hoeffding bound sqrt(R^2 ln(1/delta) / (2n)).
double hoeffding_bound(double range, double delta, double n);

/// Equal-width class histogram over an online-tracked range. Growing the
/// range redistributes existing mass proportionally to bin overlap.
struct ClassHistogram {
  bool empty = true;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::vector<double>> mass;  // [bin][class]

  void add(double x, std::size_t cls, std::size_t bins, std::size_t classes);
  /// Split threshold after the first `j` bins.
  double boundary(std::size_t j) const;

  bool operator==(const ClassHistogram&) const = default;
};

/// Per-leaf sufficient statistics for one field.
struct FieldObserver {
  FieldKind kind = FieldKind::kNumeric;
  std::vector<std::uint64_t> observed;  // per class, events with a value
  ClassHistogram hist;
  std::map<std::string, std::vector<std::uint64_t>> categories;

  bool operator==(const FieldObserver&) const = default;
};

struct TreeNode {
  bool leaf = true;
  std::uint32_t depth = 0;
  std::vector<std::uint64_t> counts;  // per class, events routed here while a leaf
  std::uint64_t since_check = 0;
  std::map<std::string, FieldObserver> observers;
  // Internal nodes: numeric `field <= threshold` or categorical `field == category`
  // sends an event to `yes`.
  std::string field;
  FieldKind kind = FieldKind::kNumeric;
  double threshold = 0.0;
  std::string category;
  bool missing_yes = true;
  std::uint32_t yes = 0;
  std::uint32_t no = 0;

  bool operator==(const TreeNode&) const = default;
};

/// VFDT-style incremental decision tree with binary splits.
class HoeffdingTree : public Classifier {
 public:
  HoeffdingTree(std::vector<std::string> classes, HoeffdingParams params = {});

  const std::vector<std::string>& classes() const override { return classes_; }
  const HoeffdingParams& params() const { return params_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::uint64_t n_seen() const { return n_seen_; }

  Prediction predict(const Event& e) const override;
  void learn(const Event& e) override;
  void reset() override;

  std::size_t leaf_of(const Event& e) const;
  std::size_t depth() const;
  std::size_t leaves() const;

  void save(ByteWriter& w) const;
  static HoeffdingTree load(ByteReader& r);

  friend bool operator==(const HoeffdingTree& a, const HoeffdingTree& b) {
    return a.classes_ == b.classes_ && a.params_ == b.params_ && a.nodes_ == b.nodes_ &&
           a.n_seen_ == b.n_seen_;
  }

 private:
  struct Candidate {
    double gain = 0.0;
    std::string field;
    FieldKind kind = FieldKind::kNumeric;
    std::size_t bin = 0;
    std::string category;
  };

  void try_split(std::size_t leaf);
  Candidate best_for(const std::string& field, const FieldObserver& obs,
                     const std::vector<std::uint64_t>& counts) const;
  void split(std::size_t leaf, const Candidate& c);

  std::vector<std::string> classes_;
  HoeffdingParams params_;
  std::vector<TreeNode> nodes_;
  std::uint64_t n_seen_ = 0;
};

}  // namespace edgestream::learn
