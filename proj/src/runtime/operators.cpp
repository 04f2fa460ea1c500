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

#include <algorithm>
#include <cmath>

#include "edgestream/connectors/codec.hpp"
#include "edgestream/connectors/split.hpp"
#include "edgestream/core/config.hpp"
#include "edgestream/core/hash.hpp"
#include "edgestream/core/rng.hpp"
#include "edgestream/core/validate.hpp"
#include "edgestream/learn/anomaly.hpp"
#include "edgestream/learn/hoeffding_tree.hpp"
#include "edgestream/learn/kmeans.hpp"
#include "edgestream/learn/model_state.hpp"
#include "edgestream/learn/prequential.hpp"
#include "edgestream/runtime/operator.hpp"
#include "edgestream/transforms/hash_project.hpp"
#include "edgestream/transforms/impute.hpp"
#include "edgestream/transforms/label_join.hpp"
#include "edgestream/transforms/reservoir.hpp"
#include "edgestream/transforms/summarize.hpp"
#include "edgestream/transforms/window_join.hpp"

namespace edgestream::runtime {

using nlohmann::json;

void Operator::set_sample_rate(const json&) {
  throw InvalidArgument("operator does not sample");
}

namespace {

bool is_count(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

/// Typed access to an operator's params with the operator id in messages.
class Params {
 public:
  explicit Params(const OperatorSpec& spec) : spec_(spec) {}

  const json* find(const char* key) const {
    auto it = spec_.params.find(key);
    return it == spec_.params.end() ? nullptr : &*it;
  }
  double number(const char* key, std::optional<double> fallback = std::nullopt) const {
    const json* v = find(key);
    if (v == nullptr) {
      if (fallback) return *fallback;
      fail(std::string("needs numeric param '") + key + "'");
    }
    if (!v->is_number()) fail(std::string("param '") + key + "' must be a number");
    return v->get<double>();
  }
  std::uint64_t count(const char* key, std::optional<std::uint64_t> fallback = std::nullopt) const {
    const json* v = find(key);
    if (v == nullptr) {
      if (fallback) return *fallback;
      fail(std::string("needs integer param '") + key + "'");
    }
    if (!is_count(*v)) fail(std::string("param '") + key + "' must be a non-negative integer");
    return v->get<std::uint64_t>();
  }
  std::string text(const char* key, std::optional<std::string> fallback = std::nullopt) const {
    const json* v = find(key);
    if (v == nullptr) {
      if (fallback) return *fallback;
      fail(std::string("needs string param '") + key + "'");
    }
    if (!v->is_string()) fail(std::string("param '") + key + "' must be a string");
    return v->get<std::string>();
  }
  std::string who() const { return "operator '" + spec_.id + "' (" + std::string(to_string(spec_.kind)) + ")"; }
  [[noreturn]] void fail(const std::string& msg) const { throw InvalidArgument(who() + " " + msg); }

 private:
  const OperatorSpec& spec_;
};

std::uint64_t schema_print(const Params& params) {
  const json* s = params.find("schema");
  if (s == nullptr) return 0;
  auto parsed = schema_from_json(*s);
  if (!parsed.ok()) params.fail("has an invalid schema: " + to_string(parsed.violations.front()));
  return schema_fingerprint(parsed.value);
}

class PassThrough : public Operator {
 public:
  void on_event(const Event& e, const std::string&, Outputs& out) override { out.push_back({e, {}}); }
  void save(ByteWriter&) const override {}
  void load(ByteReader&) override {}
  bool stateless() const override { return true; }
};

class Parse : public Operator {
 public:
  explicit Parse(const Params& p) : field_(p.text("field", "raw")) {
    if (const json* s = p.find("schema")) {
      auto parsed = schema_from_json(*s);
      if (!parsed.ok()) p.fail("has an invalid schema: " + to_string(parsed.violations.front()));
      schema_ = std::move(parsed.value);
    }
  }
  void on_event(const Event& e, const std::string&, Outputs& out) override {
    auto it = e.values.find(field_);
    if (it == e.values.end() || !is_categorical(it->second)) {
      throw connectors::MalformedRecord("event has no text field '" + field_ + "' to parse");
    }
    out.push_back({connectors::decode_event(std::get<std::string>(it->second), schema_ ? &*schema_ : nullptr), {}});
  }
  void save(ByteWriter&) const override {}
  void load(ByteReader&) override {}
  bool stateless() const override { return true; }

 private:
  std::string field_;
  std::optional<Schema> schema_;
};

class Split : public Operator {
 public:
  Split(const Params& p, const OperatorSpec& spec, const OperatorContext& ctx)
      : rules_(connectors::split_rules_from_json(spec.params)) {
    auto known = [&](const std::string& t) {
      return std::find(ctx.downstream.begin(), ctx.downstream.end(), t) != ctx.downstream.end();
    };
    if (!known(rules_.default_target)) p.fail("routes to '" + rules_.default_target + "', which is not downstream");
    for (const auto& r : rules_.rules) {
      if (!known(r.target)) p.fail("routes to '" + r.target + "', which is not downstream");
    }
  }
  void on_event(const Event& e, const std::string&, Outputs& out) override {
    out.push_back({e, connectors::split(e, rules_)});
  }
  void save(ByteWriter&) const override {}
  void load(ByteReader&) override {}
  bool stateless() const override { return true; }

 private:
  connectors::SplitRules rules_;
};

class Impute : public Operator {
 public:
  explicit Impute(const Params& p) {
    const std::string policy = p.text("policy", "mean");
    auto parsed = transforms::impute_policy_from_string(policy);
    if (!parsed) p.fail("has unknown impute policy '" + policy + "'");
    policy_ = *parsed;
  }
  void on_event(const Event& e, const std::string&, Outputs& out) override {
    out.push_back({transforms::impute(e, stats_, policy_, counters_), {}});
  }
  void save(ByteWriter& w) const override {
    stats_.save(w);
    w.u64(counters_.imputed);
    w.u64(counters_.cold_starts);
  }
  void load(ByteReader& r) override {
    stats_ = transforms::RunningStats::load(r);
    counters_.imputed = r.u64();
    counters_.cold_starts = r.u64();
  }

 private:
  transforms::ImputePolicy policy_;
  transforms::RunningStats stats_;
  transforms::ImputeCounters counters_;
};

class Normalize : public Operator {
 public:
  void on_event(const Event& e, const std::string&, Outputs& out) override {
    out.push_back({transforms::normalize(e, stats_), {}});
  }
  void save(ByteWriter& w) const override { stats_.save(w); }
  void load(ByteReader& r) override { stats_ = transforms::RunningStats::load(r); }

 private:
  transforms::RunningStats stats_;
};

class WindowJoinOp : public Operator {
 public:
  WindowJoinOp(const Params& p, const OperatorContext& ctx)
      : join_(p.number("delta_ms"), p.text("prefix", "r_")) {
    if (ctx.upstream.size() != 2) p.fail("needs exactly two upstream operators");
    left_ = p.text("left", ctx.upstream.front());
    if (left_ != ctx.upstream[0] && left_ != ctx.upstream[1]) p.fail("names unknown left input '" + left_ + "'");
  }
  void on_event(const Event& e, const std::string& from, Outputs& out) override {
    for (auto& j : from == left_ ? join_.on_left(e) : join_.on_right(e)) out.push_back({std::move(j), {}});
  }
  void on_watermark(const std::string& from, std::int64_t side, std::int64_t, Outputs&) override {
    if (from == left_) {
      join_.advance_left_watermark(side);
    } else {
      join_.advance_right_watermark(side);
    }
  }
  void save(ByteWriter& w) const override { join_.save(w); }
  void load(ByteReader& r) override { join_.load(r); }

 private:
  transforms::WindowJoin join_;
  std::string left_;
};

class LabelJoinOp : public Operator {
 public:
  LabelJoinOp(const Params& p, const OperatorContext& ctx)
      : join_(static_cast<std::int64_t>(p.count("timeout_ms"))), downstream_(ctx.downstream) {
    if (p.find("expired_to")) {
      expired_to_ = p.text("expired_to");
      if (std::find(downstream_.begin(), downstream_.end(), *expired_to_) == downstream_.end()) {
        p.fail("routes expired instances to '" + *expired_to_ + "', which is not downstream");
      }
    }
  }
  void on_event(const Event& e, const std::string&, Outputs& out) override {
    emit(e.label ? join_.on_label(e) : join_.on_instance(e), out);
  }
  void on_watermark(const std::string&, std::int64_t, std::int64_t combined, Outputs& out) override {
    emit(join_.advance_watermark(combined), out);
  }
  void save(ByteWriter& w) const override { join_.save(w); }
  void load(ByteReader& r) override { join_.load(r); }

 private:
  void emit(transforms::LabelJoinOutput res, Outputs& out) {
    for (auto& e : res.labeled) {
      if (!expired_to_) {
        out.push_back({std::move(e), {}});
        continue;
      }
      for (const auto& d : downstream_) {
        if (d != *expired_to_) out.push_back({e, d});
      }
    }
    for (auto& e : res.expired) out.push_back({std::move(e), expired_to_.value_or("")});
  }

  transforms::LabelJoin join_;
  std::vector<std::string> downstream_;
  std::optional<std::string> expired_to_;
};

/// Either a reservoir of k events emitted at end of input, or a Bernoulli
/// filter with probability `rate`. The Bernoulli coin is a hash of the event
/// under the operator's seed, so the decision does not depend on arrival order.
class Sample : public Operator {
 public:
  Sample(const Params& p, const OperatorSpec& spec, const OperatorContext& ctx)
      : who_(p.who()), rng_(derive_seed(ctx.pipeline_seed, spec.id)),
        coin_seed_(derive_seed(ctx.pipeline_seed, spec.id + "#coin")) {
    if (p.find("k") && p.find("rate")) p.fail("takes either 'k' or 'rate', not both");
    if (p.find("k")) {
      reservoir_.emplace(check_k(p.count("k")));
    } else {
      rate_ = check_rate(p.number("rate", 1.0));
    }
  }
  void on_event(const Event& e, const std::string&, Outputs& out) override {
    if (reservoir_) {
      reservoir_->add(e, rng_);
    } else if (keep(e)) {
      out.push_back({e, {}});
    }
  }
  void finish(Outputs& out) override {
    if (!reservoir_) return;
    for (const auto& e : reservoir_->items()) out.push_back({e, {}});
  }
  void set_sample_rate(const json& payload) override {
    if (!payload.is_object()) throw InvalidArgument("set_sample_rate payload must be an object");
    if (reservoir_) {
      if (!payload.contains("k") || !is_count(payload["k"])) {
        throw InvalidArgument("reservoir sampling is retargeted with {\"k\": n}");
      }
      reservoir_->set_capacity(check_k(payload["k"].get<std::uint64_t>()), rng_);
    } else {
      if (!payload.contains("rate") || !payload["rate"].is_number()) {
        throw InvalidArgument("rate sampling is retargeted with {\"rate\": p}");
      }
      rate_ = check_rate(payload["rate"].get<double>());
    }
  }
  void save(ByteWriter& w) const override {
    w.boolean(reservoir_.has_value());
    w.f64(rate_);
    w.str(rng_.save());
    if (reservoir_) {
      w.u64(reservoir_->capacity());
      w.u64(reservoir_->seen());
      w.u64(reservoir_->items().size());
      for (const auto& e : reservoir_->items()) w.event(e);
    }
  }
  void load(ByteReader& r) override {
    const bool has = r.boolean();
    rate_ = r.f64();
    rng_.load(r.str());
    if (has != reservoir_.has_value()) throw CorruptState("sampling mode does not match the operator spec");
    if (has) {
      const std::uint64_t cap = r.u64();
      const std::uint64_t seen = r.u64();
      const std::uint64_t n = r.u64();
      if (n > r.remaining() || n > cap) throw CorruptState("reservoir size exceeds input");
      std::vector<Event> items;
      for (std::uint64_t i = 0; i < n; ++i) items.push_back(r.event());
      reservoir_->restore(cap, seen, std::move(items));
    }
  }

 private:
  std::size_t check_k(std::uint64_t k) const {
    if (k == 0) throw InvalidArgument(who_ + " needs k >= 1");
    return static_cast<std::size_t>(k);
  }
  double check_rate(double rate) const {
    if (!(rate >= 0.0 && rate <= 1.0)) throw InvalidArgument(who_ + " needs a rate in [0, 1]");
    return rate;
  }
  bool keep(const Event& e) const {
    if (rate_ >= 1.0) return true;
    if (rate_ <= 0.0) return false;
    ByteWriter w;
    w.event(e);
    const std::uint64_t h = mix64(fnv1a64(w.bytes(), coin_seed_));
    return static_cast<double>(h >> 11) * 0x1.0p-53 < rate_;
  }

  std::string who_;
  Rng rng_;
  std::uint64_t coin_seed_;
  std::optional<transforms::Reservoir<Event>> reservoir_;
  double rate_ = 1.0;
};

class HashProject : public Operator {
 public:
  HashProject(const Params& p, const OperatorSpec& spec, const OperatorContext& ctx)
      : d_(p.count("d")), salt_(p.count("salt", derive_seed(ctx.pipeline_seed, spec.id))) {
    if (d_ == 0) p.fail("needs d >= 1");
  }
  void on_event(const Event& e, const std::string&, Outputs& out) override {
    out.push_back({transforms::hash_project(e, d_, salt_), {}});
  }
  void save(ByteWriter&) const override {}
  void load(ByteReader&) override {}
  bool stateless() const override { return true; }

 private:
  std::size_t d_;
  std::uint64_t salt_;
};

class Summarize : public Operator {
 public:
  explicit Summarize(const Params& p) : sum_(static_cast<std::int64_t>(p.count("window_ms"))) {
    if (sum_.window_ms() <= 0) p.fail("needs window_ms >= 1");
  }
  void on_event(const Event& e, const std::string&, Outputs& out) override {
    (void)out;
    sum_.add(e);
  }
  void on_watermark(const std::string&, std::int64_t, std::int64_t combined, Outputs& out) override {
    for (const auto& s : sum_.advance_watermark(combined)) out.push_back({s.to_event(), {}});
  }
  void finish(Outputs& out) override {
    for (const auto& s : sum_.flush()) out.push_back({s.to_event(), {}});
  }
  void save(ByteWriter& w) const override { sum_.save(w); }
  void load(ByteReader& r) override { sum_.load(r); }

 private:
  transforms::Summarizer sum_;
};

class TreeOp : public Operator {
 public:
  TreeOp(const Params& p, const OperatorSpec& spec)
      : id_(spec.id), fingerprint_(schema_print(p)), tree_(classes(p), tree_params(p)),
        preq_(p.count("window", 1000), learn::drift_policy_from_string(p.text("policy", "reset"))) {
    const std::string det = p.text("detector", "none");
    if (det != "none") {
      try {
        detector_ = learn::make_detector(det);
      } catch (const InvalidArgument& e) {
        p.fail(e.what());
      }
    }
  }
  void on_event(const Event& e, const std::string&, Outputs& out) override {
    std::size_t predicted;
    if (e.label) {
      const auto row = preq_.step(tree_, e, detector_.get(), &changes_);
      predicted = row.predicted;
      if (row.level != last_level_) {
        log_.push_back("drift op=" + id_ + " n=" + std::to_string(row.n) + " ts=" + std::to_string(e.ts) +
                       " level=" + std::string(learn::to_string(row.level)));
        last_level_ = row.level;
      }
    } else {
      predicted = tree_.predict(e).cls;
    }
    Event o = e;
    o.values["prediction"] = tree_.classes()[predicted];
    out.push_back({std::move(o), {}});
  }
  std::optional<std::string> model_state() const override {
    return learn::serialize_model(learn::ModelState{fingerprint_, tree_, changes_});
  }
  std::vector<std::string> take_log() override { return std::exchange(log_, {}); }
  void save(ByteWriter& w) const override {
    tree_.save(w);
    preq_.save(w);
    w.boolean(detector_ != nullptr);
    if (detector_) detector_->save(w);
    changes_.save(w);
    w.u8(static_cast<std::uint8_t>(last_level_));
  }
  void load(ByteReader& r) override {
    tree_ = learn::HoeffdingTree::load(r);
    preq_.load(r);
    if (r.boolean() != (detector_ != nullptr)) throw CorruptState("detector presence does not match the operator spec");
    if (detector_) detector_->load(r);
    changes_ = learn::ChangeLog::load(r);
    const std::uint8_t level = r.u8();
    if (level > 2) throw CorruptState("bad drift level");
    last_level_ = static_cast<learn::DriftLevel>(level);
  }

 private:
  static std::vector<std::string> classes(const Params& p) {
    const json* c = p.find("classes");
    if (c == nullptr || !c->is_array() || c->empty()) p.fail("needs a non-empty 'classes' list");
    std::vector<std::string> out;
    for (const auto& x : *c) {
      if (!x.is_string()) p.fail("classes must be strings");
      out.push_back(x.get<std::string>());
    }
    return out;
  }
  static learn::HoeffdingParams tree_params(const Params& p) {
    learn::HoeffdingParams hp;
    hp.delta = p.number("delta", hp.delta);
    hp.n_min = static_cast<std::uint32_t>(p.count("n_min", hp.n_min));
    hp.tau = p.number("tau", hp.tau);
    hp.bins = static_cast<std::uint32_t>(p.count("bins", hp.bins));
    hp.max_depth = static_cast<std::uint32_t>(p.count("max_depth", hp.max_depth));
    return hp;
  }

  std::string id_;
  std::uint64_t fingerprint_;
  learn::HoeffdingTree tree_;
  learn::Prequential preq_;
  std::unique_ptr<learn::DriftDetector> detector_;
  learn::ChangeLog changes_;
  learn::DriftLevel last_level_ = learn::DriftLevel::kStable;
  std::vector<std::string> log_;
};

class KMeansOp : public Operator {
 public:
  explicit KMeansOp(const Params& p) : fingerprint_(schema_print(p)), model_(p.count("k")) {}
  void on_event(const Event& e, const std::string&, Outputs& out) override {
    model_.update(e);
    Event o = e;
    o.values["cluster"] = static_cast<double>(model_.assign(e));
    out.push_back({std::move(o), {}});
  }
  std::optional<std::string> model_state() const override {
    return learn::serialize_model(learn::ModelState{fingerprint_, model_, {}});
  }
  void save(ByteWriter& w) const override { model_.save(w); }
  void load(ByteReader& r) override { model_ = learn::KMeans::load(r); }

 private:
  std::uint64_t fingerprint_;
  learn::KMeans model_;
};

class AnomalyOp : public Operator {
 public:
  explicit AnomalyOp(const Params& p) : fingerprint_(schema_print(p)) {}
  void on_event(const Event& e, const std::string&, Outputs& out) override {
    Event o = e;
    o.values["anomaly_score"] = model_.score_and_update(e);
    out.push_back({std::move(o), {}});
  }
  std::optional<std::string> model_state() const override {
    return learn::serialize_model(learn::ModelState{fingerprint_, model_, {}});
  }
  void save(ByteWriter& w) const override { model_.save(w); }
  void load(ByteReader& r) override { model_ = learn::AnomalyScorer::load(r); }

 private:
  std::uint64_t fingerprint_;
  learn::AnomalyScorer model_;
};

}  // namespace

std::unique_ptr<Operator> make_operator(const OperatorSpec& spec, const OperatorContext& ctx) {
  const Params p(spec);
  switch (spec.kind) {
    case OperatorKind::kSource:
    case OperatorKind::kSink:
    case OperatorKind::kIdentity:
      return std::make_unique<PassThrough>();
    case OperatorKind::kParse:
      return std::make_unique<Parse>(p);
    case OperatorKind::kSplit:
      return std::make_unique<Split>(p, spec, ctx);
    case OperatorKind::kImpute:
      return std::make_unique<Impute>(p);
    case OperatorKind::kNormalize:
      return std::make_unique<Normalize>();
    case OperatorKind::kWindowJoin:
      return std::make_unique<WindowJoinOp>(p, ctx);
    case OperatorKind::kLabelJoin:
      return std::make_unique<LabelJoinOp>(p, ctx);
    case OperatorKind::kReservoirSample:
      return std::make_unique<Sample>(p, spec, ctx);
    case OperatorKind::kHashProject:
      return std::make_unique<HashProject>(p, spec, ctx);
    case OperatorKind::kSummarize:
      return std::make_unique<Summarize>(p);
    case OperatorKind::kHoeffdingTree:
      return std::make_unique<TreeOp>(p, spec);
    case OperatorKind::kKMeans:
      return std::make_unique<KMeansOp>(p);
    case OperatorKind::kAnomaly:
      return std::make_unique<AnomalyOp>(p);
  }
  throw InvalidArgument("unknown operator kind");
}

std::string save_operator(const Operator& op) {
  ByteWriter w;
  op.save(w);
  return std::move(w).take();
}

std::unique_ptr<Operator> restore_operator(const OperatorSpec& spec, const OperatorContext& ctx,
                                           std::string_view state) {
  auto op = make_operator(spec, ctx);
  ByteReader r(state);
  op->load(r);
  if (!r.done()) throw CorruptState("trailing bytes in state of operator '" + spec.id + "'");
  return op;
}

}  // namespace edgestream::runtime
