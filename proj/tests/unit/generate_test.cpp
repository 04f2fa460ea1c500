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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "edgestream/generate/generator.hpp"

using namespace edgestream;
using namespace edgestream::generate;

namespace {

GeneratorSpec hyperplane(std::uint32_t d, double noise, std::uint64_t seed = 1) {
  GeneratorSpec s;
  s.kind = GeneratorKind::kHyperplane;
  s.d = d;
  s.noise_prob = noise;
  s.seed = seed;
  return s;
}

double x(const Event& e, std::size_t j) { return std::get<double>(e.values.at("x" + std::to_string(j))); }

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

double chi_square_critical(double dof, double alpha) {
  return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), alpha));
}

std::vector<Event> uniform_sample(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<Event> out;
  for (std::size_t i = 0; i < n; ++i) {
    Event e;
    e.ts = static_cast<std::int64_t>(i);
    e.key = "k";
    e.values["u"] = rng.uniform(lo, hi);
    e.values["c"] = std::string(rng.bernoulli(0.7) ? "red" : "blue");
    e.label = rng.bernoulli(0.25) ? "yes" : "no";
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

TEST(Hyperplane, ClosedFormLabels) {
  GeneratorSpec s = hyperplane(2, 0.0);
  s.initial = Concept{{1.0, 0.0}, 0.5, {}, {}, {}};
  auto g = make_generator(s);
  for (const auto& e : take(*g, 2000)) {
    EXPECT_EQ(*e.label, x(e, 0) >= 0.5 ? "1" : "0");
    EXPECT_GE(x(e, 1), 0.0);
    EXPECT_LT(x(e, 1), 1.0);
  }
}

TEST(Hyperplane, NoiseFlipRate) {
  GeneratorSpec s = hyperplane(3, 0.1, 7);
  s.initial = Concept{{0.2, 0.5, 0.3}, 0.5, {}, {}, {}};
  auto g = make_generator(s);
  const int n = 10000;
  int flips = 0;
  for (const auto& e : take(*g, n)) {
    const bool clean = 0.2 * x(e, 0) + 0.5 * x(e, 1) + 0.3 * x(e, 2) >= 0.5;
    flips += (*e.label == "1") != clean;
  }
  EXPECT_NEAR(flips / double(n), 0.1, 3 * std::sqrt(0.1 * 0.9 / n));
}

TEST(Hyperplane, SeedDeterminism) {
  auto a = take(*make_generator(hyperplane(5, 0.05, 3)), 500);
  auto b = take(*make_generator(hyperplane(5, 0.05, 3)), 500);
  auto c = take(*make_generator(hyperplane(5, 0.05, 4)), 500);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Hyperplane, GradualDriftInterpolatesWeights) {
  GeneratorSpec s = hyperplane(2, 0.0);
  s.initial = Concept{{1.0, 0.0}, 0.5, {}, {}, {}};
  s.schedule.push_back({1000, DriftKind::kGradual, 1000, Concept{{0.0, 1.0}, 0.5, {}, {}, {}}});
  auto g = make_generator(s);
  auto events = take(*g, 3000);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const double alpha = i < 1000 ? 0.0 : std::min(1.0, (i - 1000 + 1) / 1000.0);
    const double dot = (1 - alpha) * x(events[i], 0) + alpha * x(events[i], 1);
    ASSERT_EQ(*events[i].label, dot >= 0.5 ? "1" : "0") << i;
  }
  EXPECT_EQ(g->boundaries(), (std::vector<Boundary>{{1000, DriftKind::kGradual}}));
}

TEST(Hyperplane, AbruptDefaultReversesWeights) {
  GeneratorSpec s = hyperplane(2, 0.0);
  s.initial = Concept{{1.0, 0.0}, 0.5, {}, {}, {}};
  s.schedule.push_back({100, DriftKind::kAbrupt, 0, std::nullopt});
  auto events = take(*make_generator(s), 300);
  for (std::size_t i = 100; i < events.size(); ++i) {
    EXPECT_EQ(*events[i].label, x(events[i], 1) >= 0.5 ? "1" : "0");
  }
}

TEST(Generator, RateSetsTimestamps) {
  GeneratorSpec s = hyperplane(1, 0.0);
  s.rate_eps = 500;
  auto events = take(*make_generator(s), 5);
  EXPECT_EQ(events[0].ts, 0);
  EXPECT_EQ(events[1].ts, 2);
  EXPECT_EQ(events[4].ts, 8);
}

TEST(Mixture, SkewedPriors) {
  GeneratorSpec s;
  s.kind = GeneratorKind::kMixture;
  s.d = 2;
  s.skew = {0.9, 0.1};
  s.seed = 5;
  const int n = 10000;
  int zeros = 0;
  for (const auto& e : take(*make_generator(s), n)) zeros += *e.label == "0";
  EXPECT_NEAR(zeros / double(n), 0.9, 3 * std::sqrt(0.9 * 0.1 / n));
}

TEST(Mixture, WellSeparatedClassesAndSwap) {
  GeneratorSpec s;
  s.kind = GeneratorKind::kMixture;
  s.d = 2;
  s.seed = 6;
  const std::vector<std::vector<double>> means = {{0, 0}, {10 / std::sqrt(2.0), 10 / std::sqrt(2.0)}};
  s.initial = Concept{{}, std::nullopt, means, {{1, 1}, {1, 1}}, {}};
  s.schedule.push_back({5000, DriftKind::kAbrupt, 0, std::nullopt});
  auto events = take(*make_generator(s), 10000);
  auto nearest = [&](const Event& e) {
    double d[2];
    for (int c = 0; c < 2; ++c) d[c] = std::hypot(x(e, 0) - means[c][0], x(e, 1) - means[c][1]);
    return d[0] <= d[1] ? "0" : "1";
  };
  int before = 0, after = 0;
  for (int i = 0; i < 5000; ++i) before += *events[i].label == nearest(events[i]);
  for (int i = 5000; i < 10000; ++i) after += *events[i].label != nearest(events[i]);
  EXPECT_GT(before / 5000.0, 0.999);
  EXPECT_GT(after / 5000.0, 0.999);
}

TEST(Fit, EmptySample) { EXPECT_THROW(fit_generator({}), EmptySample); }

TEST(Fit, ConstantFieldHasOneHeavyBin) {
  std::vector<Event> sample(500);
  for (auto& e : sample) e.values["c"] = 3.25;
  FittedModel m = fit_generator(sample, 20);
  ASSERT_EQ(m.fields.size(), 1u);
  const auto& masses = m.fields[0].masses;
  const double smooth = 1.0 / (500 + 20);
  int heavy = 0;
  for (double p : masses) {
    if (p > smooth * 1.5) {
      ++heavy;
      EXPECT_DOUBLE_EQ(p, 501.0 / 520.0);
    } else {
      EXPECT_DOUBLE_EQ(p, smooth);
    }
  }
  EXPECT_EQ(heavy, 1);
}

TEST(Fit, UniformSampleHasFlatMasses) {
  Rng rng(10);
  const std::size_t n = 10000, bins = 20;
  FittedModel m = fit_generator(uniform_sample(rng, n, 0, 1), bins);
  const FittedField* u = nullptr;
  for (const auto& f : m.fields) {
    if (f.name == "u") u = &f;
  }
  ASSERT_NE(u, nullptr);
  const double p = 1.0 / bins, sigma = std::sqrt(p * (1 - p) / n);
  for (double mass : u->masses) EXPECT_NEAR(mass, p, 3 * sigma);
  EXPECT_EQ(m.classes, (std::vector<std::string>{"no", "yes"}));
  EXPECT_EQ(m.records, n);
}

TEST(Fit, SerializationHoldsNoRawValue) {
  Rng rng(11);
  auto sample = uniform_sample(rng, 2000, -50, 50);
  const std::vector<double> sentinels = {123.456789012345, -987.654321098765, 42.4242424242};
  for (std::size_t i = 0; i < sentinels.size(); ++i) sample[i * 10].values["u"] = sentinels[i];
  const std::string text = to_json(fit_generator(sample)).dump();
  for (const auto& e : sample) {
    const double v = std::get<double>(e.values.at("u"));
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    ASSERT_EQ(text.find(buf), std::string::npos) << buf;
    ASSERT_EQ(text.find(nlohmann::json(v).dump()), std::string::npos) << v;
  }
  for (double s : sentinels) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", s);
    EXPECT_EQ(text.find(buf), std::string::npos);
  }
}

TEST(Fit, JsonRoundTrip) {
  Rng rng(12);
  FittedModel m = fit_generator(uniform_sample(rng, 300, 0, 1));
  EXPECT_EQ(fitted_model_from_json(nlohmann::json::parse(to_json(m).dump())), m);
}

TEST(GenFitted, ZeroEventsIsEmpty) {
  Rng rng(1);
  FittedModel m = fit_generator(uniform_sample(rng, 100, 0, 1));
  EXPECT_TRUE(take(*gen_fitted(m, 1), 0).empty());
}

TEST(GenFitted, MarginalMeanMatchesSample) {
  Rng rng(13);
  std::vector<Event> sample;
  double sum = 0;
  for (int i = 0; i < 5000; ++i) {
    Event e;
    e.values["g"] = rng.normal(20, 4);
    e.values["e"] = rng.exponential(3);
    sample.push_back(e);
  }
  FittedModel m = fit_generator(sample);
  for (const char* field : {"g", "e"}) {
    sum = 0;
    for (const auto& e : sample) sum += std::get<double>(e.values.at(field));
    const double sample_mean = sum / sample.size();
    double gen = 0;
    auto events = take(*gen_fitted(m, 2), 10000);
    for (const auto& e : events) gen += std::get<double>(e.values.at(field));
    EXPECT_NEAR(gen / events.size(), sample_mean, 0.05 * std::abs(sample_mean)) << field;
  }
}

TEST(GenFitted, MarginalsPassChiSquare) {
  Rng rng(14);
  FittedModel m = fit_generator(uniform_sample(rng, 3000, 0, 1));
  const std::size_t n = 100000;
  auto events = take(*gen_fitted(m, 15), n);
  for (const auto& f : m.fields) {
    std::vector<double> probs = f.kind == FieldKind::kNumeric ? f.masses : f.category_masses;
    std::vector<double> counts(probs.size(), 0.0);
    for (const auto& e : events) {
      const Value& v = e.values.at(f.name);
      if (f.kind == FieldKind::kNumeric) {
        const double pos = (std::get<double>(v) - f.lo) / (f.hi - f.lo) * probs.size();
        counts[std::min(probs.size() - 1, static_cast<std::size_t>(pos))] += 1;
      } else {
        const auto it = std::find(f.categories.begin(), f.categories.end(), std::get<std::string>(v));
        counts[it - f.categories.begin()] += 1;
      }
    }
    double stat = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      const double expected = probs[i] * n;
      stat += (counts[i] - expected) * (counts[i] - expected) / expected;
    }
    EXPECT_LT(stat, chi_square_critical(probs.size() - 1, 0.01)) << f.name;
  }
  std::vector<double> label_counts(m.classes.size(), 0.0);
  for (const auto& e : events) {
    label_counts[std::find(m.classes.begin(), m.classes.end(), *e.label) - m.classes.begin()] += 1;
  }
  double stat = 0;
  for (std::size_t i = 0; i < m.priors.size(); ++i) {
    const double expected = m.priors[i] * n;
    stat += (label_counts[i] - expected) * (label_counts[i] - expected) / expected;
  }
  EXPECT_LT(stat, chi_square_critical(m.priors.size() - 1, 0.01));
}

TEST(GenFitted, DisjointSamplesAreDistinguishable) {
  Rng rng(16);
  FittedModel a = fit_generator(uniform_sample(rng, 2000, 0, 1));
  FittedModel b = fit_generator(uniform_sample(rng, 2000, 2, 3));
  std::vector<double> xa, xb;
  for (const auto& e : take(*gen_fitted(a, 1), 1000)) xa.push_back(std::get<double>(e.values.at("u")));
  for (const auto& e : take(*gen_fitted(b, 1), 1000)) xb.push_back(std::get<double>(e.values.at("u")));
  // Asymptotic two-sample critical value c(alpha) * sqrt((n+m)/(nm)).
  const double critical = std::sqrt(-0.5 * std::log(0.01 / 2)) * std::sqrt(2.0 / 1000);
  EXPECT_GT(ks_statistic(xa, xb), critical);
}

TEST(GenFitted, MissingRateAndPriorDrift) {
  Rng rng(17);
  auto sample = uniform_sample(rng, 4000, 0, 1);
  for (std::size_t i = 0; i < sample.size(); i += 4) sample[i].values["u"] = Missing{};
  FittedModel m = fit_generator(sample);
  DriftSchedule schedule = {{5000, DriftKind::kAbrupt, 0, std::nullopt}};
  auto g = gen_fitted(m, 3, schedule);
  auto events = take(*g, 10000);
  int missing = 0, yes_before = 0, yes_after = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    missing += is_missing(events[i].values.at("u"));
    (i < 5000 ? yes_before : yes_after) += *events[i].label == "yes";
  }
  EXPECT_NEAR(missing / 10000.0, 0.25, 3 * std::sqrt(0.25 * 0.75 / 10000));
  EXPECT_LT(yes_before, 2000);
  EXPECT_GT(yes_after, 3000);
  EXPECT_EQ(g->boundaries().size(), 1u);
}

TEST(DriftCsv, Format) {
  std::ostringstream out;
  write_drift_csv(out, {{100, DriftKind::kAbrupt}, {250, DriftKind::kGradual}});
  EXPECT_EQ(out.str(), "event_n,kind\n100,abrupt\n250,gradual\n");
}

TEST(GeneratorSpecJson, RoundTripAndViolations) {
  GeneratorSpec s = hyperplane(3, 0.05, 9);
  s.rate_eps = 100;
  s.schedule = {{10, DriftKind::kAbrupt, 0, std::nullopt},
                {20, DriftKind::kGradual, 5, Concept{{1, 2, 3}, 1.0, {}, {}, {}}}};
  auto back = generator_from_json(nlohmann::json::parse(to_json(s).dump()));
  ASSERT_TRUE(back.ok()) << to_string(back.violations[0]);
  EXPECT_EQ(back.value, s);

  auto bad = generator_from_json(nlohmann::json::parse(R"({"kind": "hyperplane", "dims": 3})"));
  ASSERT_FALSE(bad.ok());
  EXPECT_EQ(bad.violations[0].rule, "unknown-key");
  EXPECT_EQ(bad.violations[0].element, "dims");

  auto skew = generator_from_json(nlohmann::json::parse(R"({"kind": "mixture", "skew": [0.5, 0.6]})"));
  ASSERT_FALSE(skew.ok());
  EXPECT_EQ(skew.violations[0].rule, "skew");

  auto sched = generator_from_json(nlohmann::json::parse(
      R"({"kind": "hyperplane", "schedule": [{"at": 5}, {"at": 5}, {"at": 9, "kind": "gradual"}]})"));
  ASSERT_EQ(sched.violations.size(), 2u);
  EXPECT_EQ(sched.violations[0].rule, "schedule");
  EXPECT_EQ(sched.violations[1].rule, "schedule");
}
