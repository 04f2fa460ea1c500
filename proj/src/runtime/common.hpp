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

#include "edgestream/core/cluster.hpp"
#include "edgestream/core/pipeline.hpp"
#include "edgestream/runtime/runtime.hpp"

namespace edgestream::runtime::detail {

[[noreturn]] void rethrow_in_operator(const std::string& op, const Event* e);

/// Structural validation of the placement; throws ConfigError.
void require_placement(const PipelineSpec& p, const ClusterSpec& c, const Placement& pl);

/// Checks that inputs are keyed by source operators only; throws UnknownOperator.
void require_inputs(const Graph& g, const Inputs& inputs);

std::string event_brief(const Event& e);

}  // namespace edgestream::runtime::detail
