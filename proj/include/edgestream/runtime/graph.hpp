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

#include <map>
#include <string>
#include <vector>

#include "edgestream/core/pipeline.hpp"
#include "edgestream/runtime/operator.hpp"

namespace edgestream::runtime {

/// Validated pipeline topology with operators indexed in topological order.
class Graph {
 public:
  /// Throws ConfigError listing the violations of an invalid pipeline.
  explicit Graph(PipelineSpec p);

  const PipelineSpec& pipeline() const { return p_; }
  std::size_t size() const { return order_.size(); }
  const std::string& id(std::size_t i) const { return order_[i]; }
  const OperatorSpec& spec(std::size_t i) const { return *specs_[i]; }
  const OperatorContext& context(std::size_t i) const { return ctx_[i]; }
  /// Throws UnknownOperator.
  std::size_t index(const std::string& id) const;
  bool contains(const std::string& id) const { return index_.count(id) > 0; }
  const std::vector<std::size_t>& upstream(std::size_t i) const { return up_[i]; }
  const std::vector<std::size_t>& downstream(std::size_t i) const { return down_[i]; }
  bool is_source(std::size_t i) const { return up_[i].empty(); }
  bool is_sink(std::size_t i) const { return down_[i].empty(); }
  std::vector<std::size_t> sources() const;

  std::unique_ptr<Operator> instantiate(std::size_t i) const { return make_operator(spec(i), ctx_[i]); }

 private:
  PipelineSpec p_;
  std::vector<std::string> order_;
  std::vector<const OperatorSpec*> specs_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<OperatorContext> ctx_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
};

}  // namespace edgestream::runtime
