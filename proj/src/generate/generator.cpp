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

#include "edgestream/generate/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include "edgestream/core/hash.hpp"
#include "edgestream/core/json_reader.hpp"

namespace edgestream::generate {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::size_t sample_index(Rng& rng, const std::vector<double>& probs) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.size() - 1;
}

std::vector<double> lerp(const std::vector<double>& a, const std::vector<double>& b, double t) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1 - t) * a[i] + t * b[i];
  return out;
}

std::vector<std::vector<double>> lerp(const std::vector<std::vector<double>>& a,
                                      const std::vector<std::vector<double>>& b, double t) {
  std::vector<std::vector<double>> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = lerp(a[i], b[i], t);
  return out;
}

std::string feature(std::size_t j) { return "x" + std::to_string(j); }

class Hyperplane : public Generator {
 public:
  explicit Hyperplane(const GeneratorSpec& spec)
      : Generator(spec.seed, spec.rate_eps, spec.schedule), spec_(spec) {
    Concept c = spec.initial.value_or(Concept{});
    if (c.weights.empty()) {
      Rng init(derive_seed(spec.seed, "hyperplane"));
      for (std::uint32_t j = 0; j < spec.d; ++j) c.weights.push_back(init.uniform());
    }
    if (!c.threshold) c.threshold = half_sum(c.weights);
    weights_ = c.weights;
    threshold_ = *c.threshold;
  }

 protected:
  void fill(Event& e) override {
    double dot = 0.0;
    for (std::uint32_t j = 0; j < spec_.d; ++j) {
      const double x = rng_.uniform();
      dot += weights_[j] * x;
      e.values[feature(j)] = x;
    }
    const bool flip = rng_.uniform() < spec_.noise_prob;
    const bool positive = (dot >= threshold_) != flip;
    e.label = spec_.classes[positive ? 1 : 0];
  }

  void apply(const Concept& from, const Concept& to, double alpha) override {
    weights_ = lerp(from.weights, to.weights, alpha);
    threshold_ = (1 - alpha) * *from.threshold + alpha * *to.threshold;
  }

  Concept current() const override {
    Concept c;
    c.weights = weights_;
    c.threshold = threshold_;
    return c;
  }

  Concept resolve(const std::optional<Concept>& next, const Concept& from) const override {
    Concept c;
    if (next && !next->weights.empty()) {
      c.weights = next->weights;
    } else {
      c.weights.assign(from.weights.rbegin(), from.weights.rend());
    }
    c.threshold = next && next->threshold ? *next->threshold : half_sum(c.weights);
    return c;
  }

 private:
  static double half_sum(const std::vector<double>& w) {
    return 0.5 * std::accumulate(w.begin(), w.end(), 0.0);
  }

  GeneratorSpec spec_;
  std::vector<double> weights_;
  double threshold_ = 0.0;
};

class Mixture : public Generator {
 public:
  explicit Mixture(const GeneratorSpec& spec)
      : Generator(spec.seed, spec.rate_eps, spec.schedule), spec_(spec) {
    const std::size_t k = spec.classes.size();
    priors_ = spec.skew.empty() ? std::vector<double>(k, 1.0 / static_cast<double>(k)) : spec.skew;
    Concept c = spec.initial.value_or(Concept{});
    if (c.means.empty()) {
      Rng init(derive_seed(spec.seed, "mixture"));
      c.means.assign(k, std::vector<double>(spec.d));
      for (auto& m : c.means) {
        for (auto& x : m) x = init.uniform(0.0, 5.0);
      }
    }
    if (c.variances.empty()) c.variances.assign(k, std::vector<double>(spec.d, 1.0));
    means_ = c.means;
    variances_ = c.variances;
  }

 protected:
  void fill(Event& e) override {
    std::size_t c = sample_index(rng_, priors_);
    for (std::uint32_t j = 0; j < spec_.d; ++j) {
      e.values[feature(j)] = rng_.normal(means_[c][j], std::sqrt(variances_[c][j]));
    }
    const bool flip = rng_.uniform() < spec_.noise_prob;
    const std::size_t other = rng_.below(spec_.classes.size() - 1);
    if (flip) c = other >= c ? other + 1 : other;
    e.label = spec_.classes[c];
  }

  void apply(const Concept& from, const Concept& to, double alpha) override {
    means_ = lerp(from.means, to.means, alpha);
    variances_ = lerp(from.variances, to.variances, alpha);
  }

  Concept current() const override {
    Concept c;
    c.means = means_;
    c.variances = variances_;
    return c;
  }

  Concept resolve(const std::optional<Concept>& next, const Concept& from) const override {
    auto shifted = [](const std::vector<std::vector<double>>& v) {
      std::vector<std::vector<double>> out(v.begin() + 1, v.end());
      out.push_back(v.front());
      return out;
    };
    Concept c;
    c.means = next && !next->means.empty() ? next->means : shifted(from.means);
    c.variances = next && !next->variances.empty() ? next->variances : shifted(from.variances);
    return c;
  }

 private:
  GeneratorSpec spec_;
  std::vector<double> priors_;
  std::vector<std::vector<double>> means_;
  std::vector<std::vector<double>> variances_;
};

class Fitted : public Generator {
 public:
  Fitted(const FittedModel& model, std::uint64_t seed, std::optional<double> rate_eps,
         DriftSchedule schedule)
      : Generator(seed, rate_eps, std::move(schedule)), model_(model), priors_(model.priors) {}

 protected:
  void fill(Event& e) override {
    std::optional<std::size_t> cls;
    if (!model_.classes.empty()) cls = sample_index(rng_, priors_);
    for (const auto& f : model_.fields) {
      const bool missing = rng_.uniform() < f.missing_rate;
      if (f.kind == FieldKind::kNumeric) {
        const std::size_t b = sample_index(rng_, f.masses);
        const double width = (f.hi - f.lo) / static_cast<double>(f.masses.size());
        const double x = f.lo + (static_cast<double>(b) + rng_.uniform()) * width;
        e.values[f.name] = missing ? Value{Missing{}} : Value{x};
      } else {
        const std::size_t c = sample_index(rng_, f.category_masses);
        e.values[f.name] = missing ? Value{Missing{}} : Value{f.categories[c]};
      }
    }
    if (cls) e.label = model_.classes[*cls];
  }

  void apply(const Concept& from, const Concept& to, double alpha) override {
    priors_ = lerp(from.priors, to.priors, alpha);
  }

  Concept current() const override {
    Concept c;
    c.priors = priors_;
    return c;
  }

  Concept resolve(const std::optional<Concept>& next, const Concept& from) const override {
    Concept c;
    if (next && !next->priors.empty()) {
      c.priors = next->priors;
    } else {
      c.priors.assign(from.priors.rbegin(), from.priors.rend());
    }
    return c;
  }

 private:
  FittedModel model_;
  std::vector<double> priors_;
};

std::vector<double> doubles(const json& j, const std::string& what, std::vector<Violation>& out) {
  std::vector<double> v;
  if (!j.is_array()) {
    out.push_back({"type", what, "'" + what + "' must be an array of numbers"});
    return v;
  }
  for (const auto& x : j) {
    if (!x.is_number()) {
      out.push_back({"type", what, "'" + what + "' must be an array of numbers"});
      return {};
    }
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<std::vector<double>> matrix(const json& j, const std::string& what,
                                        std::vector<Violation>& out) {
  std::vector<std::vector<double>> m;
  if (!j.is_array()) {
    out.push_back({"type", what, "'" + what + "' must be an array of arrays"});
    return m;
  }
  for (const auto& row : j) m.push_back(doubles(row, what, out));
  return m;
}

Concept concept_from_json(const json& j, const std::string& path, std::vector<Violation>& out) {
  Concept c;
  ObjectReader r(j, path, out);
  if (const json* v = r.get("weights", false)) c.weights = doubles(*v, "weights", out);
  if (const json* v = r.get("threshold", false)) {
    if (v->is_number()) {
      c.threshold = v->get<double>();
    } else {
      r.fail("type", "threshold", "'threshold' in " + path + " must be a number");
    }
  }
  if (const json* v = r.get("means", false)) c.means = matrix(*v, "means", out);
  if (const json* v = r.get("variances", false)) c.variances = matrix(*v, "variances", out);
  if (const json* v = r.get("priors", false)) c.priors = doubles(*v, "priors", out);
  return c;
}

ordered_json to_json(const Concept& c) {
  ordered_json j = ordered_json::object();
  if (!c.weights.empty()) j["weights"] = c.weights;
  if (c.threshold) j["threshold"] = *c.threshold;
  if (!c.means.empty()) j["means"] = c.means;
  if (!c.variances.empty()) j["variances"] = c.variances;
  if (!c.priors.empty()) j["priors"] = c.priors;
  return j;
}

void check_concept(const Concept& c, const GeneratorSpec& s, const std::string& where,
                   std::vector<Violation>& out) {
  const std::size_t k = s.classes.size();
  if (!c.weights.empty() && c.weights.size() != s.d) {
    out.push_back({"concept", where, where + ": weights must have d entries"});
  }
  auto check_matrix = [&](const std::vector<std::vector<double>>& m, const char* name, bool positive) {
    if (m.empty()) return;
    bool ok = m.size() == k;
    for (const auto& row : m) {
      ok = ok && row.size() == s.d;
      for (double x : row) ok = ok && std::isfinite(x) && (!positive || x > 0);
    }
    if (!ok) {
      out.push_back({"concept", where,
                     where + ": " + name + " must be a classes x d matrix" +
                         (positive ? " of positive values" : "")});
    }
  };
  check_matrix(c.means, "means", false);
  check_matrix(c.variances, "variances", true);
  if (!c.priors.empty()) {
    double sum = 0;
    bool ok = true;
    for (double p : c.priors) {
      ok = ok && p >= 0;
      sum += p;
    }
    if (!ok || std::abs(sum - 1.0) > 1e-9) {
      out.push_back({"concept", where, where + ": priors must be non-negative and sum to 1"});
    }
  }
}

}  // namespace

std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::kHyperplane: return "hyperplane";
    case GeneratorKind::kMixture: return "mixture";
    case GeneratorKind::kFitted: return "fitted";
  }
  return "hyperplane";
}

std::string to_string(DriftKind k) { return k == DriftKind::kAbrupt ? "abrupt" : "gradual"; }

Generator::Generator(std::uint64_t seed, std::optional<double> rate_eps, DriftSchedule schedule)
    : rng_(seed), rate_eps_(rate_eps), schedule_(std::move(schedule)) {}

void Generator::advance_schedule() {
  if (next_point_ < schedule_.size() && schedule_[next_point_].at == n_) {
    const DriftPoint& p = schedule_[next_point_++];
    from_ = current();
    to_ = resolve(p.next, from_);
    boundaries_.push_back({n_, p.kind});
    if (p.kind == DriftKind::kAbrupt || p.width == 0) {
      apply(from_, to_, 1.0);
      active_.reset();
    } else {
      active_ = p;
    }
  }
  if (active_) {
    const double alpha = std::min(
        1.0, static_cast<double>(n_ - active_->at + 1) / static_cast<double>(active_->width));
    apply(from_, to_, alpha);
    if (alpha >= 1.0) active_.reset();
  }
}

Event Generator::next() {
  advance_schedule();
  Event e;
  e.ts = rate_eps_ ? static_cast<std::int64_t>(std::floor(static_cast<double>(n_) * 1000.0 / *rate_eps_))
                   : static_cast<std::int64_t>(n_);
  e.key = "g";
  fill(e);
  ++n_;
  return e;
}

std::vector<Event> take(Generator& g, std::uint64_t n) {
  std::vector<Event> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(g.next());
  return out;
}

std::unique_ptr<Generator> make_generator(const GeneratorSpec& spec, const FittedModel* fitted) {
  if (auto v = validate_generator(spec); !v.empty()) throw InvalidArgument(to_string(v.front()));
  switch (spec.kind) {
    case GeneratorKind::kHyperplane: return std::make_unique<Hyperplane>(spec);
    case GeneratorKind::kMixture: return std::make_unique<Mixture>(spec);
    case GeneratorKind::kFitted:
      if (fitted == nullptr) throw InvalidArgument("fitted generator needs a fitted model");
      return std::make_unique<Fitted>(*fitted, spec.seed, spec.rate_eps, spec.schedule);
  }
  return nullptr;
}

std::unique_ptr<Generator> gen_fitted(const FittedModel& model, std::uint64_t seed,
                                      DriftSchedule schedule) {
  return std::make_unique<Fitted>(model, seed, std::nullopt, std::move(schedule));
}

std::vector<Violation> validate_generator(const GeneratorSpec& s) {
  std::vector<Violation> out;
  if (s.kind != GeneratorKind::kFitted) {
    if (s.d < 1) out.push_back({"dimension", "d", "d must be >= 1"});
    if (s.classes.size() < 2) out.push_back({"classes", "classes", "at least 2 classes are required"});
    if (s.kind == GeneratorKind::kHyperplane && s.classes.size() != 2) {
      out.push_back({"classes", "classes", "hyperplane generator has exactly 2 classes"});
    }
    std::vector<std::string> sorted = s.classes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      out.push_back({"classes", "classes", "class names must be unique"});
    }
  } else if (s.model.empty()) {
    out.push_back({"model", "model", "fitted generator needs a model path"});
  }
  if (!(s.noise_prob >= 0.0 && s.noise_prob <= 1.0)) {
    out.push_back({"noise", "noise_prob", "noise_prob must lie in [0,1]"});
  }
  if (!s.skew.empty()) {
    double sum = 0;
    bool ok = s.kind == GeneratorKind::kFitted || s.skew.size() == s.classes.size();
    for (double p : s.skew) {
      ok = ok && p >= 0;
      sum += p;
    }
    if (!ok || std::abs(sum - 1.0) > 1e-9) {
      out.push_back({"skew", "skew", "skew must have one non-negative prior per class summing to 1"});
    }
  }
  if (s.rate_eps && !(*s.rate_eps > 0)) out.push_back({"rate", "rate_eps", "rate_eps must be positive"});
  if (s.initial && s.kind != GeneratorKind::kFitted) check_concept(*s.initial, s, "concept", out);
  for (std::size_t i = 0; i < s.schedule.size(); ++i) {
    const auto& p = s.schedule[i];
    const std::string where = "schedule[" + std::to_string(i) + "]";
    if (i > 0 && p.at <= s.schedule[i - 1].at) {
      out.push_back({"schedule", where, where + ": at must be strictly increasing"});
    }
    if (p.kind == DriftKind::kGradual && p.width == 0) {
      out.push_back({"schedule", where, where + ": gradual drift needs width > 0"});
    }
    if (p.next && s.kind != GeneratorKind::kFitted) check_concept(*p.next, s, where, out);
  }
  return out;
}

Parsed<GeneratorSpec> generator_from_json(const json& j) {
  Parsed<GeneratorSpec> res;
  auto& out = res.violations;
  GeneratorSpec& s = res.value;
  {
    ObjectReader r(j, "generator", out);
    std::string kind;
    r.text("kind", kind);
    if (kind == "hyperplane") {
      s.kind = GeneratorKind::kHyperplane;
    } else if (kind == "mixture") {
      s.kind = GeneratorKind::kMixture;
    } else if (kind == "fitted") {
      s.kind = GeneratorKind::kFitted;
    } else if (!kind.empty()) {
      r.fail("unknown-kind", kind, "unknown generator kind '" + kind + "'");
    }
    double d = s.d;
    r.number("d", d, false);
    if (d != std::floor(d) || d < 0 || d > 1e6) {
      r.fail("type", "d", "'d' must be a non-negative integer");
    } else {
      s.d = static_cast<std::uint32_t>(d);
    }
    if (const json* v = r.array("classes", false)) {
      s.classes.clear();
      for (const auto& c : *v) {
        if (c.is_string()) {
          s.classes.push_back(c.get<std::string>());
        } else {
          r.fail("type", "classes", "'classes' must be an array of strings");
        }
      }
    }
    r.number("noise_prob", s.noise_prob, false);
    if (const json* v = r.get("skew", false)) s.skew = doubles(*v, "skew", out);
    if (const json* v = r.get("seed", false)) {
      if (v->is_number_unsigned()) {
        s.seed = v->get<std::uint64_t>();
      } else {
        r.fail("type", "seed", "'seed' must be an unsigned integer");
      }
    }
    if (const json* v = r.get("rate_eps", false)) {
      if (v->is_number()) {
        s.rate_eps = v->get<double>();
      } else {
        r.fail("type", "rate_eps", "'rate_eps' must be a number");
      }
    }
    if (const json* v = r.get("concept", false)) s.initial = concept_from_json(*v, "concept", out);
    r.text("model", s.model, false);
    if (const json* v = r.array("schedule", false)) {
      for (std::size_t i = 0; i < v->size(); ++i) {
        const std::string path = "schedule[" + std::to_string(i) + "]";
        ObjectReader pr((*v)[i], path, out);
        DriftPoint p;
        double at = 0, width = 0;
        pr.number("at", at);
        pr.number("width", width, false);
        if (at < 0 || at != std::floor(at) || width < 0 || width != std::floor(width)) {
          pr.fail("type", path, path + ": at and width must be non-negative integers");
        }
        p.at = static_cast<std::uint64_t>(at);
        p.width = static_cast<std::uint64_t>(width);
        std::string kind_text = "abrupt";
        pr.text("kind", kind_text, false);
        if (kind_text == "gradual") {
          p.kind = DriftKind::kGradual;
        } else if (kind_text != "abrupt") {
          pr.fail("unknown-kind", kind_text, path + ": unknown drift kind '" + kind_text + "'");
        }
        if (const json* c = pr.get("concept", false)) p.next = concept_from_json(*c, path + ".concept", out);
        s.schedule.push_back(std::move(p));
      }
    }
  }
  if (res.violations.empty()) res.violations = validate_generator(s);
  return res;
}

ordered_json to_json(const GeneratorSpec& s) {
  ordered_json j;
  j["kind"] = to_string(s.kind);
  j["d"] = s.d;
  j["classes"] = s.classes;
  j["noise_prob"] = s.noise_prob;
  if (!s.skew.empty()) j["skew"] = s.skew;
  j["seed"] = s.seed;
  if (s.rate_eps) j["rate_eps"] = *s.rate_eps;
  if (s.initial) j["concept"] = to_json(*s.initial);
  if (!s.model.empty()) j["model"] = s.model;
  ordered_json sched = ordered_json::array();
  for (const auto& p : s.schedule) {
    ordered_json o;
    o["at"] = p.at;
    o["kind"] = to_string(p.kind);
    if (p.kind == DriftKind::kGradual) o["width"] = p.width;
    if (p.next) o["concept"] = to_json(*p.next);
    sched.push_back(std::move(o));
  }
  j["schedule"] = std::move(sched);
  return j;
}

void write_drift_csv(std::ostream& out, const std::vector<Boundary>& boundaries) {
  out << "event_n,kind\n";
  for (const auto& b : boundaries) out << b.event_n << ',' << to_string(b.kind) << '\n';
}

FittedModel fit_generator(const std::vector<Event>& sample, std::size_t bins) {
  if (sample.empty()) throw EmptySample("cannot fit a generator to an empty sample");
  if (bins < 20) throw InvalidArgument("fitted histograms need at least 20 bins");
  struct Acc {
    std::optional<FieldKind> kind;
    std::vector<double> xs;
    std::map<std::string, std::uint64_t> cats;
  };
  std::map<std::string, Acc> acc;
  std::map<std::string, std::uint64_t> labels;
  for (const auto& e : sample) {
    for (const auto& [name, v] : e.values) {
      Acc& a = acc[name];
      if (is_missing(v)) continue;
      const FieldKind kind = is_numeric(v) ? FieldKind::kNumeric : FieldKind::kCategorical;
      if (a.kind && *a.kind != kind) throw InvalidArgument("field '" + name + "' changes kind within the sample");
      a.kind = kind;
      if (kind == FieldKind::kNumeric) {
        a.xs.push_back(std::get<double>(v));
      } else {
        ++a.cats[std::get<std::string>(v)];
      }
    }
    if (e.label) ++labels[*e.label];
  }
  FittedModel m;
  m.records = sample.size();
  const double n = static_cast<double>(sample.size());
  for (auto& [name, a] : acc) {
    FittedField f;
    f.name = name;
    f.kind = a.kind.value_or(FieldKind::kNumeric);
    const std::size_t present = f.kind == FieldKind::kNumeric ? a.xs.size() : [&] {
      std::uint64_t t = 0;
      for (const auto& [_, c] : a.cats) t += c;
      return static_cast<std::size_t>(t);
    }();
    f.missing_rate = (n - static_cast<double>(present)) / n;
    if (f.kind == FieldKind::kNumeric) {
      double lo = 0, hi = 0;
      if (!a.xs.empty()) {
        const auto [mn, mx] = std::minmax_element(a.xs.begin(), a.xs.end());
        lo = *mn;
        hi = *mx;
      }
      // Widen the range to a decimal grid strictly outside [lo, hi] so neither
      // extreme is stored verbatim.
      const double scale = hi > lo ? hi - lo : std::max(std::abs(lo), 1.0);
      const double grid = std::pow(10.0, std::floor(std::log10(scale)) - 4.0);
      f.lo = (std::floor(lo / grid) - 1.0) * grid;
      f.hi = (std::ceil(hi / grid) + 1.0) * grid;
      std::vector<double> counts(bins, 0.0);
      for (double x : a.xs) {
        const double pos = (x - f.lo) / (f.hi - f.lo) * static_cast<double>(bins);
        counts[std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, std::floor(pos))))] += 1;
      }
      for (double c : counts) {
        f.masses.push_back((c + 1.0) / (static_cast<double>(a.xs.size()) + static_cast<double>(bins)));
      }
    } else {
      const double k = static_cast<double>(a.cats.size());
      for (const auto& [cat, c] : a.cats) {
        f.categories.push_back(cat);
        f.category_masses.push_back((static_cast<double>(c) + 1.0) / (static_cast<double>(present) + k));
      }
    }
    m.fields.push_back(std::move(f));
  }
  std::uint64_t labeled = 0;
  for (const auto& [_, c] : labels) labeled += c;
  const double k = static_cast<double>(labels.size());
  for (const auto& [label, c] : labels) {
    m.classes.push_back(label);
    m.priors.push_back((static_cast<double>(c) + 1.0) / (static_cast<double>(labeled) + k));
  }
  return m;
}

ordered_json to_json(const FittedModel& m) {
  ordered_json j;
  j["records"] = m.records;
  j["classes"] = m.classes;
  j["priors"] = m.priors;
  ordered_json fields = ordered_json::array();
  for (const auto& f : m.fields) {
    ordered_json o;
    o["name"] = f.name;
    o["kind"] = f.kind == FieldKind::kNumeric ? "numeric" : "categorical";
    o["missing_rate"] = f.missing_rate;
    if (f.kind == FieldKind::kNumeric) {
      o["lo"] = f.lo;
      o["hi"] = f.hi;
      o["masses"] = f.masses;
    } else {
      o["categories"] = f.categories;
      o["masses"] = f.category_masses;
    }
    fields.push_back(std::move(o));
  }
  j["fields"] = std::move(fields);
  return j;
}

FittedModel fitted_model_from_json(const json& j) {
  try {
    FittedModel m;
    m.records = j.at("records").get<std::uint64_t>();
    m.classes = j.at("classes").get<std::vector<std::string>>();
    m.priors = j.at("priors").get<std::vector<double>>();
    if (m.classes.size() != m.priors.size()) throw InvalidArgument("classes and priors differ in length");
    for (const auto& o : j.at("fields")) {
      FittedField f;
      f.name = o.at("name").get<std::string>();
      const auto kind = o.at("kind").get<std::string>();
      f.missing_rate = o.at("missing_rate").get<double>();
      if (kind == "numeric") {
        f.lo = o.at("lo").get<double>();
        f.hi = o.at("hi").get<double>();
        f.masses = o.at("masses").get<std::vector<double>>();
        if (f.masses.empty() || !(f.hi > f.lo)) throw InvalidArgument("bad histogram for '" + f.name + "'");
      } else if (kind == "categorical") {
        f.kind = FieldKind::kCategorical;
        f.categories = o.at("categories").get<std::vector<std::string>>();
        f.category_masses = o.at("masses").get<std::vector<double>>();
        if (f.categories.empty() || f.categories.size() != f.category_masses.size()) {
          throw InvalidArgument("bad category table for '" + f.name + "'");
        }
      } else {
        throw InvalidArgument("unknown field kind '" + kind + "'");
      }
      m.fields.push_back(std::move(f));
    }
    return m;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed fitted model: ") + e.what());
  }
}

}  // namespace edgestream::generate
