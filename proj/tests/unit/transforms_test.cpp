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
#include <map>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>

#include "edgestream/core/rng.hpp"
#include "edgestream/transforms/hash_project.hpp"
#include "edgestream/transforms/impute.hpp"
#include "edgestream/transforms/label_join.hpp"
#include "edgestream/transforms/reservoir.hpp"
#include "edgestream/transforms/running_stats.hpp"
#include "edgestream/transforms/summarize.hpp"
#include "edgestream/transforms/window_join.hpp"

using namespace edgestream;
using namespace edgestream::transforms;

namespace {

Event ev(std::int64_t ts, std::string key, ValueMap values = {}) {
  Event e;
  e.ts = ts;
  e.key = std::move(key);
  e.values = std::move(values);
  return e;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST(RunningStats, WelfordMatchesTwoPass) {
  Rng rng(1);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = 1e3 + rng.normal() * 50.0;
  NumericStats s;
  for (double x : xs) s.add(x);
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  EXPECT_LT(rel_err(s.mean, mean), 1e-9);
  EXPECT_LT(rel_err(s.m2, ss), 1e-9);
  EXPECT_LT(rel_err(s.variance(), ss / (xs.size() - 1)), 1e-9);
}

TEST(RunningStats, MergeEqualsConcatenation) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    NumericStats a, b, all;
    const int na = static_cast<int>(rng.below(200)), nb = static_cast<int>(rng.below(200));
    for (int i = 0; i < na + nb; ++i) {
      const double x = rng.normal(5.0, 3.0);
      (i < na ? a : b).add(x);
      all.add(x);
    }
    a.merge(b);
    EXPECT_EQ(a.n, all.n);
    if (all.n == 0) continue;
    EXPECT_LT(rel_err(a.mean, all.mean), 1e-12);
    if (all.n > 1) {
      EXPECT_LT(rel_err(a.m2, all.m2), 1e-9);
    }
    EXPECT_EQ(a.min, all.min);
    EXPECT_EQ(a.max, all.max);
  }
}

TEST(RunningStats, SaveLoad) {
  RunningStats s;
  s.observe(ev(1, "k", {{"x", 1.0}, {"c", std::string("a")}, {"m", Missing{}}}));
  s.observe(ev(2, "k", {{"x", 3.0}, {"c", std::string("b")}}));
  ByteWriter w;
  s.save(w);
  ByteReader r(w.bytes());
  EXPECT_EQ(RunningStats::load(r), s);
  EXPECT_EQ(s.numeric("m"), nullptr);
}

TEST(Impute, NoMissingIsIdentity) {
  RunningStats stats;
  ImputeCounters c;
  Event e = ev(1, "k", {{"x", 2.0}, {"c", std::string("a")}});
  EXPECT_EQ(impute(e, stats, ImputePolicy::kMean, c), e);
  EXPECT_EQ(c.imputed, 0u);
}

TEST(Impute, MeanOfHistory) {
  RunningStats stats;
  ImputeCounters c;
  // Batch mean of the history {3, 6} is 4.5.
  impute(ev(1, "k", {{"x", 3.0}}), stats, ImputePolicy::kMean, c);
  impute(ev(2, "k", {{"x", 6.0}}), stats, ImputePolicy::kMean, c);
  Event out = impute(ev(3, "k", {{"x", Missing{}}}), stats, ImputePolicy::kMean, c);
  EXPECT_EQ(std::get<double>(out.values.at("x")), 4.5);
  EXPECT_EQ(c.imputed, 1u);
  // The missing value was not folded into the stats.
  EXPECT_EQ(stats.numeric("x")->n, 2u);
}

TEST(Impute, ColdStartLeavesMarker) {
  RunningStats stats;
  ImputeCounters c;
  Event e = ev(1, "k", {{"x", Missing{}}});
  EXPECT_EQ(impute(e, stats, ImputePolicy::kMean, c), e);
  EXPECT_EQ(c.cold_starts, 1u);
}

TEST(Impute, LastValueAndMode) {
  RunningStats stats;
  ImputeCounters c;
  for (auto [x, cat] : {std::pair{1.0, "a"}, {2.0, "b"}, {7.0, "a"}}) {
    impute(ev(1, "k", {{"x", x}, {"c", std::string(cat)}}), stats, ImputePolicy::kMode, c);
  }
  Event miss = ev(2, "k", {{"x", Missing{}}, {"c", Missing{}}});
  Event last = impute(miss, stats, ImputePolicy::kLastValue, c);
  EXPECT_EQ(std::get<double>(last.values.at("x")), 7.0);
  EXPECT_EQ(std::get<std::string>(last.values.at("c")), "a");
  RunningStats stats2;
  for (auto cat : {"b", "a", "b"}) impute(ev(1, "k", {{"c", std::string(cat)}}), stats2, ImputePolicy::kMode, c);
  Event mode = impute(ev(2, "k", {{"c", Missing{}}}), stats2, ImputePolicy::kMode, c);
  EXPECT_EQ(std::get<std::string>(mode.values.at("c")), "b");
}

TEST(Normalize, FirstEventIsZero) {
  RunningStats stats;
  Event out = normalize(ev(1, "k", {{"x", 5.0}, {"y", -2.0}}), stats);
  EXPECT_EQ(std::get<double>(out.values.at("x")), 0.0);
  EXPECT_EQ(std::get<double>(out.values.at("y")), 0.0);
}

TEST(Normalize, UsesPreUpdateStats) {
  RunningStats stats;
  std::vector<double> outs;
  for (double x : {1.0, 2.0, 3.0, 4.0}) {
    outs.push_back(std::get<double>(normalize(ev(1, "k", {{"x", x}}), stats).values.at("x")));
  }
  // Two-pass stats of {1,2,3}: mean 2, sample std 1.
  EXPECT_DOUBLE_EQ(outs[3], 2.0);
}

TEST(Normalize, ConstantStreamIsZero) {
  RunningStats stats;
  for (int i = 0; i < 20; ++i) {
    Event out = normalize(ev(i, "k", {{"x", 3.0}, {"c", std::string("z")}}), stats);
    EXPECT_EQ(std::get<double>(out.values.at("x")), 0.0);
    EXPECT_EQ(std::get<std::string>(out.values.at("c")), "z");
  }
}

TEST(WindowJoin, DisjointKeysProduceNothing) {
  WindowJoin j(100);
  EXPECT_TRUE(j.on_left(ev(1, "a")).empty());
  EXPECT_TRUE(j.on_right(ev(1, "b")).empty());
}

TEST(WindowJoin, PairWithinWindow) {
  WindowJoin j(60);
  EXPECT_TRUE(j.on_left(ev(100, "k", {{"x", 1.0}})).empty());
  auto out = j.on_right(ev(150, "k", {{"x", 2.0}}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].ts, 150);
  EXPECT_EQ(std::get<double>(out[0].values.at("x")), 1.0);
  EXPECT_EQ(std::get<double>(out[0].values.at("r_x")), 2.0);
}

TEST(WindowJoin, FieldCollision) {
  WindowJoin j(10);
  j.on_left(ev(1, "k", {{"r_x", 1.0}}));
  EXPECT_THROW(j.on_right(ev(1, "k", {{"x", 1.0}})), FieldCollision);
}

namespace {

std::multiset<std::string> as_multiset(const std::vector<Event>& events) {
  std::multiset<std::string> out;
  for (const auto& e : events) {
    ByteWriter w;
    w.event(e);
    out.insert(w.bytes());
  }
  return out;
}

}  // namespace

TEST(WindowJoin, MatchesNestedLoopOracle) {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const double delta = 50;
    std::vector<Event> left, right;
    for (int i = 0; i < 200; ++i) {
      left.push_back(ev(static_cast<std::int64_t>(rng.below(2000)), "k" + std::to_string(rng.below(5)),
                        {{"l", double(i)}}));
      right.push_back(ev(static_cast<std::int64_t>(rng.below(2000)), "k" + std::to_string(rng.below(5)),
                         {{"r", double(i)}}));
    }
    std::vector<Event> oracle;
    for (const auto& l : left) {
      for (const auto& r : right) {
        if (l.key == r.key && std::abs(l.ts - r.ts) <= delta) oracle.push_back(merge_joined(l, r));
      }
    }
    // Each side arrives in ts order; sides interleave randomly with
    // watermarks advanced to each side's last ts.
    auto by_ts = [](const Event& a, const Event& b) { return a.ts < b.ts; };
    std::stable_sort(left.begin(), left.end(), by_ts);
    std::stable_sort(right.begin(), right.end(), by_ts);
    WindowJoin j(delta);
    std::vector<Event> got;
    std::size_t li = 0, ri = 0;
    std::size_t max_buffered = 0;
    while (li < left.size() || ri < right.size()) {
      const bool take_left = ri == right.size() || (li < left.size() && rng.bernoulli(0.5));
      if (take_left) {
        for (auto& e : j.on_left(left[li])) got.push_back(std::move(e));
        j.advance_left_watermark(left[li].ts);
        ++li;
      } else {
        for (auto& e : j.on_right(right[ri])) got.push_back(std::move(e));
        j.advance_right_watermark(right[ri].ts);
        ++ri;
      }
      max_buffered = std::max(max_buffered, j.buffered_left() + j.buffered_right());
    }
    EXPECT_EQ(as_multiset(got), as_multiset(oracle));
    EXPECT_LT(max_buffered, 400u);
  }
}

TEST(WindowJoin, SaveLoadContinues) {
  WindowJoin a(20);
  a.on_left(ev(10, "k", {{"x", 1.0}}));
  a.on_left(ev(10, "k", {{"x", 2.0}}));
  a.advance_left_watermark(10);
  ByteWriter w;
  a.save(w);
  WindowJoin b(20);
  ByteReader r(w.bytes());
  b.load(r);
  EXPECT_EQ(a.on_right(ev(25, "k", {{"y", 3.0}})), b.on_right(ev(25, "k", {{"y", 3.0}})));
}

namespace {

Event instance(std::int64_t ts, int id) {
  Event e = ev(ts, "k", {{"x", double(id)}});
  e.instance_id = "i" + std::to_string(id);
  return e;
}

Event label_for(std::int64_t ts, int id, std::string label) {
  Event e = ev(ts, "k");
  e.instance_id = "i" + std::to_string(id);
  e.label = std::move(label);
  return e;
}

}  // namespace

TEST(LabelJoin, LabelBeforeTimeout) {
  LabelJoin j(100);
  EXPECT_TRUE(j.on_instance(instance(10, 1)).labeled.empty());
  auto out = j.on_label(label_for(50, 1, "yes"));
  ASSERT_EQ(out.labeled.size(), 1u);
  EXPECT_EQ(out.labeled[0].label, "yes");
  EXPECT_EQ(j.pending(), 0u);
}

TEST(LabelJoin, ExpiresAtDeadline) {
  LabelJoin j(100);
  j.on_instance(instance(10, 1));
  EXPECT_TRUE(j.advance_watermark(109).expired.empty());
  auto out = j.advance_watermark(110);
  ASSERT_EQ(out.expired.size(), 1u);
  EXPECT_EQ(out.expired[0].ts, 110);
  EXPECT_FALSE(out.expired[0].label);
  // A late label is an orphan.
  EXPECT_TRUE(j.on_label(label_for(120, 1, "late")).labeled.empty());
}

TEST(LabelJoin, DuplicatePendingInstance) {
  LabelJoin j(100);
  j.on_instance(instance(10, 1));
  EXPECT_THROW(j.on_instance(instance(11, 1)), DuplicateInstance);
}

TEST(LabelJoin, PartitionMatchesOfflineOracle) {
  Rng rng(77);
  const std::int64_t timeout = 300;
  // Instance i arrives at ts 10*i; the first 400 get a label after a random
  // delay in [0, 600).
  struct Arrival {
    std::int64_t ts;
    int order;  // instances before labels at equal ts
    Event e;
    bool is_label;
  };
  std::vector<Arrival> arrivals;
  std::map<std::string, std::pair<std::int64_t, std::string>> label_of;
  for (int i = 0; i < 500; ++i) {
    arrivals.push_back({10 * i, 0, instance(10 * i, i), false});
    if (i < 400) {
      const std::int64_t lt = 10 * i + static_cast<std::int64_t>(rng.below(600));
      const std::string lab = rng.bernoulli(0.5) ? "a" : "b";
      arrivals.push_back({lt, 1, label_for(lt, i, lab), true});
      label_of["i" + std::to_string(i)] = {lt, lab};
    }
  }
  std::stable_sort(arrivals.begin(), arrivals.end(), [](const Arrival& a, const Arrival& b) {
    return std::tie(a.ts, a.order) < std::tie(b.ts, b.order);
  });
  LabelJoin j(timeout);
  std::vector<Event> labeled, expired;
  auto take = [&](LabelJoinOutput out) {
    for (auto& e : out.labeled) labeled.push_back(std::move(e));
    for (auto& e : out.expired) expired.push_back(std::move(e));
  };
  for (const auto& a : arrivals) {
    take(j.advance_watermark(a.ts));
    take(a.is_label ? j.on_label(a.e) : j.on_instance(a.e));
  }
  take(j.advance_watermark(std::numeric_limits<std::int64_t>::max()));

  // Offline oracle: labeled iff a label exists with ts < instance ts + timeout.
  std::set<std::string> want_labeled, want_expired;
  for (int i = 0; i < 500; ++i) {
    const std::string id = "i" + std::to_string(i);
    auto it = label_of.find(id);
    if (it != label_of.end() && it->second.first < 10 * i + timeout) {
      want_labeled.insert(id);
    } else {
      want_expired.insert(id);
    }
  }
  std::set<std::string> got_labeled, got_expired;
  for (const auto& e : labeled) {
    EXPECT_TRUE(got_labeled.insert(*e.instance_id).second);
    EXPECT_EQ(*e.label, label_of[*e.instance_id].second);
  }
  for (const auto& e : expired) EXPECT_TRUE(got_expired.insert(*e.instance_id).second);
  EXPECT_EQ(got_labeled, want_labeled);
  EXPECT_EQ(got_expired, want_expired);
  EXPECT_EQ(labeled.size() + expired.size(), 500u);
  EXPECT_EQ(j.pending(), 0u);
}

TEST(Reservoir, FillPhaseKeepsEverything) {
  Rng rng(1);
  Reservoir<int> r(10);
  for (int i = 0; i < 7; ++i) EXPECT_TRUE(r.add(i, rng));
  EXPECT_EQ(r.items(), (std::vector<int>{0, 1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(r.seen(), 7u);
}

TEST(Reservoir, SecondItemKeptHalfTheTime) {
  Rng rng(2);
  const int trials = 10000;
  int kept = 0;
  for (int t = 0; t < trials; ++t) {
    Reservoir<int> r(1);
    r.add(1, rng);
    r.add(2, rng);
    kept += r.items()[0] == 2;
  }
  const double sigma = std::sqrt(0.25 / trials);
  EXPECT_NEAR(kept / double(trials), 0.5, 3 * sigma);
}

TEST(Reservoir, UniformInclusion) {
  const int k = 10, n = 1000, trials = 20000;
  const double p = double(k) / n;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  boost::math::chi_squared chi(n - 1);
  const double critical = boost::math::quantile(boost::math::complement(chi, 0.01));
  for (std::uint64_t seed : {101u, 202u, 303u}) {
    Rng rng(seed);
    std::vector<int> counts(n, 0);
    for (int t = 0; t < trials; ++t) {
      Reservoir<int> r(k);
      for (int i = 0; i < n; ++i) r.add(i, rng);
      ASSERT_EQ(r.items().size(), std::size_t(k));
      for (int i : r.items()) ++counts[i];
    }
    int within = 0;
    double stat = 0;
    const double expected = double(trials) * k / n;
    for (int c : counts) {
      within += std::abs(c / double(trials) - p) <= 3 * sigma;
      stat += (c - expected) * (c - expected) / expected;
    }
    EXPECT_GE(within, static_cast<int>(0.99 * n)) << "seed " << seed;
    EXPECT_LT(stat, critical) << "seed " << seed;
  }
}

TEST(Reservoir, ShrinkKeepsSubset) {
  Rng rng(3);
  Reservoir<int> r(10);
  for (int i = 0; i < 100; ++i) r.add(i, rng);
  auto before = r.items();
  r.set_capacity(4, rng);
  ASSERT_EQ(r.items().size(), 4u);
  for (int x : r.items()) EXPECT_NE(std::find(before.begin(), before.end(), x), before.end());
}

TEST(HashProject, ZeroEventProjectsToZero) {
  Event e = ev(1, "k", {{"a", 0.0}, {"b", 0.0}});
  Event h = hash_project(e, 8, 3);
  ASSERT_EQ(h.values.size(), 8u);
  for (const auto& [name, v] : h.values) EXPECT_EQ(std::get<double>(v), 0.0);
}

TEST(HashProject, NoCollisionIsSignedPermutation) {
  Event e = ev(1, "k", {{"a", 1.5}, {"b", -2.0}, {"c", 4.0}});
  const std::size_t d = 64;
  std::uint64_t salt = 0;
  // Pick the first salt without a collision among the three tokens.
  for (;; ++salt) {
    std::set<std::size_t> buckets;
    for (auto t : {"a", "b", "c"}) buckets.insert(hash_slot(t, d, salt).bucket);
    if (buckets.size() == 3) break;
  }
  Event h = hash_project(e, d, salt);
  for (const auto& [name, v] : e.values) {
    const auto slot = hash_slot(name, d, salt);
    EXPECT_EQ(std::get<double>(h.values.at("h" + std::to_string(slot.bucket))),
              slot.sign * std::get<double>(v));
  }
  EXPECT_EQ(hash_project(e, d, salt), h);
}

TEST(HashProject, CategoricalOneHot) {
  Event e = ev(1, "k", {{"c", std::string("red")}});
  const auto slot = hash_slot("c#red", 16, 9);
  Event h = hash_project(e, 16, 9);
  EXPECT_EQ(std::get<double>(h.values.at("h" + std::to_string(slot.bucket))), slot.sign * 1.0);
}

TEST(HashProject, InnerProductUnbiased) {
  Rng rng(5);
  const std::size_t dim = 100, d = 64;
  double total_exact = 0, total_est = 0, sum_rel = 0;
  for (int pair = 0; pair < 1000; ++pair) {
    std::vector<double> a(dim), b(dim);
    for (auto& x : a) x = rng.uniform();
    for (auto& x : b) x = rng.uniform();
    double exact = 0;
    for (std::size_t i = 0; i < dim; ++i) exact += a[i] * b[i];
    double est = 0;
    for (std::uint64_t salt = 0; salt < 50; ++salt) {
      auto ha = hash_project_vector(a, d, salt + 1000 * pair);
      auto hb = hash_project_vector(b, d, salt + 1000 * pair);
      for (std::size_t i = 0; i < d; ++i) est += ha[i] * hb[i];
    }
    est /= 50;
    total_exact += exact;
    total_est += est;
    sum_rel += std::abs(est - exact) / exact;
  }
  EXPECT_LT(std::abs(total_est - total_exact) / total_exact, 0.05);
  EXPECT_LT(sum_rel / 1000, 0.05);
}

TEST(Summarize, SingleEvent) {
  Summarizer s(1000);
  s.add(ev(5, "k", {{"x", 2.5}}));
  auto out = s.advance_watermark(1000);
  ASSERT_EQ(out.size(), 1u);
  const auto& f = out[0].fields.at("x");
  EXPECT_EQ(f.count, 1u);
  EXPECT_EQ(f.mean(), 2.5);
  EXPECT_EQ(f.min, 2.5);
  EXPECT_EQ(f.max, 2.5);
  Event e = out[0].to_event();
  EXPECT_EQ(e.ts, 1000);
  EXPECT_EQ(std::get<double>(e.values.at("x.mean")), 2.5);
}

TEST(Summarize, WindowBoundary) {
  Summarizer s(1000);
  for (int t = 0; t < 1000; ++t) s.add(ev(t, "k", {{"x", double(t)}}));
  EXPECT_TRUE(s.advance_watermark(999).empty());
  auto out = s.advance_watermark(1000);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].events, 1000u);
  EXPECT_EQ(out[0].fields.at("x").max, 999.0);
}

TEST(Summarize, PartitionedMergeEqualsSinglePass) {
  Rng rng(9);
  Summarizer whole(100), p0(100), p1(100);
  for (int i = 0; i < 5000; ++i) {
    Event e = ev(static_cast<std::int64_t>(rng.below(1000)), "k" + std::to_string(rng.below(3)),
                 {{"x", std::floor(rng.normal() * 100)}, {"y", double(rng.below(10))}});
    whole.add(e);
    (rng.bernoulli(0.5) ? p0 : p1).add(e);
  }
  auto single = whole.flush();
  auto merged = merge_summaries({p0.flush(), p1.flush()});
  // Integer-valued inputs make the sums exact, so equality is exact.
  ASSERT_EQ(merged.size(), single.size());
  for (std::size_t i = 0; i < single.size(); ++i) EXPECT_EQ(merged[i], single[i]);
}

TEST(Summarize, SummaryEventRoundTrip) {
  Summarizer s(50);
  s.add(ev(10, "a", {{"x", 1.0}, {"y", 4.0}}));
  s.add(ev(20, "a", {{"x", 3.0}}));
  auto out = s.flush();
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(summary_from_event(out[0].to_event(), 50), out[0]);
}
