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

#include "common.hpp"

#include <algorithm>
#include <exception>

#include "edgestream/core/bytes.hpp"
#include "edgestream/core/validate.hpp"

namespace edgestream::runtime {

namespace detail {

std::string event_brief(const Event& e) {
  return "ts=" + std::to_string(e.ts) + " key='" + e.key + "'";
}

void rethrow_in_operator(const std::string& op, const Event* e) {
  std::string where = "operator '" + op + "'";
  if (e != nullptr) where += " at event " + event_brief(*e);
  try {
    throw;
  } catch (const OperatorError&) {
    throw;
  } catch (const std::exception& ex) {
    throw OperatorError(where + ": " + ex.what());
  }
}

void require_placement(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl) {
  auto violations = validate_placement(p, c, pl);
  if (violations.empty()) return;
  std::string msg = "invalid placement:";
  for (const auto& v : violations) msg += "\n  " + to_string(v);
  throw ConfigError(msg);
}

void require_inputs(const Graph& g, const Inputs& inputs) {
  for (const auto& [id, events] : inputs) {
    if (!g.is_source(g.index(id))) throw UnknownOperator("'" + id + "' is not a source operator");
  }
}

}  // namespace detail

bool same_output_multiset(const SinkOutputs& a, const SinkOutputs& b) {
  auto encode = [](const SinkOutputs& o) {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& [sink, events] : o) {
      if (events.empty()) continue;
      auto& v = out[sink];
      for (const auto& e : events) {
        ByteWriter w;
        w.event(e);
        v.push_back(std::move(w).take());
      }
      std::sort(v.begin(), v.end());
    }
    return out;
  };
  return encode(a) == encode(b);
}

}  // namespace edgestream::runtime
