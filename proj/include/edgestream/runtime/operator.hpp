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
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgestream/core/bytes.hpp"
#include "edgestream/core/error.hpp"
#include "edgestream/core/pipeline.hpp"

namespace edgestream::runtime {

EDGESTREAM_DEFINE_ERROR(OperatorError);

inline constexpr std::int64_t kNoWatermark = std::numeric_limits<std::int64_t>::min();
inline constexpr std::int64_t kFinalWatermark = std::numeric_limits<std::int64_t>::max();

/// An output event. An empty target means every downstream operator.
struct Emitted {
  Event event;
  std::string target;
};

using Outputs = std::vector<Emitted>;

/// Where an operator sits in the graph: its sorted upstream and downstream ids.
struct OperatorContext {
  std::uint64_t pipeline_seed = 0;
  std::vector<std::string> upstream;
  std::vector<std::string> downstream;
};

/// One pipeline stage. `from` names the upstream operator, or is empty for
/// events fed from outside. Implementations are single-owner and never
/// shared between threads.
class Operator {
 public:
  virtual ~Operator() = default;

  virtual void on_event(const Event& e, const std::string& from, Outputs& out) = 0;

  /// `side` is the new watermark of input `from`; `combined` is the minimum
  /// over all inputs.
  virtual void on_watermark(const std::string& from, std::int64_t side, std::int64_t combined,
                            Outputs& out) {
    (void)from, (void)side, (void)combined, (void)out;
  }

  /// End of input; flush whatever is still held.
  virtual void finish(Outputs& out) { (void)out; }

  virtual void save(ByteWriter& w) const = 0;
  virtual void load(ByteReader& r) = 0;

  /// True when output depends on the current event only, so copies can run
  /// in parallel.
  virtual bool stateless() const { return false; }

  /// Serialized ModelState for learner operators.
  virtual std::optional<std::string> model_state() const { return std::nullopt; }

  /// Payload {"rate": p} or {"k": n}. Only sampling operators accept it.
  virtual void set_sample_rate(const nlohmann::json& payload);

  /// Log lines produced since the last call (drift signals).
  virtual std::vector<std::string> take_log() { return {}; }
};

/// Instantiates the operator for `spec`. Throws InvalidArgument on bad params.
std::unique_ptr<Operator> make_operator(const OperatorSpec& spec, const OperatorContext& ctx);

/// Operator state as bytes, and a fresh instance restored from such bytes.
std::string save_operator(const Operator& op);
std::unique_ptr<Operator> restore_operator(const OperatorSpec& spec, const OperatorContext& ctx,
                                           std::string_view state);

}  // namespace edgestream::runtime
