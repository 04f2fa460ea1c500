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

#include "edgestream/runtime/graph.hpp"

#include <algorithm>

#include "edgestream/core/validate.hpp"
#include "edgestream/runtime/control.hpp"

namespace edgestream::runtime {

Graph::Graph(PipelineSpec p) : p_(std::move(p)) {
  auto violations = validate_pipeline(p_);
  if (!violations.empty()) {
    std::string msg = "invalid pipeline:";
    for (const auto& v : violations) msg += "\n  " + to_string(v);
    throw ConfigError(msg);
  }
  order_ = topological_order(p_);
  for (std::size_t i = 0; i < order_.size(); ++i) index_.emplace(order_[i], i);
  specs_.resize(order_.size());
  for (const auto& op : p_.operators) specs_[index_.at(op.id)] = &op;
  up_.resize(order_.size());
  down_.resize(order_.size());
  for (const auto& e : p_.edges) {
    std::size_t from = index_.at(e.from), to = index_.at(e.to);
    down_[from].push_back(to);
    up_[to].push_back(from);
  }
  ctx_.resize(order_.size());
  auto by_id = [this](std::size_t a, std::size_t b) { return order_[a] < order_[b]; };
  for (std::size_t i = 0; i < order_.size(); ++i) {
    std::sort(up_[i].begin(), up_[i].end(), by_id);
    std::sort(down_[i].begin(), down_[i].end(), by_id);
    ctx_[i].pipeline_seed = p_.seed;
    for (auto u : up_[i]) ctx_[i].upstream.push_back(order_[u]);
    for (auto d : down_[i]) ctx_[i].downstream.push_back(order_[d]);
  }
}

std::size_t Graph::index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownOperator("no operator '" + id + "'");
  return it->second;
}

std::vector<std::size_t> Graph::sources() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (is_source(i)) out.push_back(i);
  }
  std::sort(out.begin(), out.end(), [this](std::size_t a, std::size_t b) { return order_[a] < order_[b]; });
  return out;
}

}  // namespace edgestream::runtime
