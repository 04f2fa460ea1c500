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

#include "edgestream/learn/hoeffding_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace edgestream::learn {

namespace {

double entropy(const std::vector<double>& counts) {
  double n = 0;
  for (double c : counts) n += c;
  if (n <= 0) return 0.0;
  double h = 0;
  for (double c : counts) {
    if (c > 0) h -= (c / n) * std::log2(c / n);
  }
  return h;
}

double total(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double split_gain(const std::vector<double>& yes, const std::vector<double>& no) {
  const double ny = total(yes), nn = total(no);
  const double n = ny + nn;
  if (ny <= 0 || nn <= 0) return 0.0;
  std::vector<double> all(yes.size());
  for (std::size_t c = 0; c < yes.size(); ++c) all[c] = yes[c] + no[c];
  return entropy(all) - (ny / n) * entropy(yes) - (nn / n) * entropy(no);
}

void write_counts(ByteWriter& w, const std::vector<std::uint64_t>& v) {
  w.u32(static_cast<std::uint32_t>(v.size()));
  for (auto x : v) w.u64(x);
}

std::vector<std::uint64_t> read_counts(ByteReader& r) {
  std::vector<std::uint64_t> v(r.u32());
  for (auto& x : v) x = r.u64();
  return v;
}

}  // namespace

double hoeffding_bound(double range, double delta, double n) {
  return std::sqrt(range * range * std::log(1.0 / delta) / (2.0 * n));
}

void ClassHistogram::add(double x, std::size_t cls, std::size_t bins, std::size_t classes) {
  if (empty) {
    empty = false;
    lo = hi = x;
    mass.assign(bins, std::vector<double>(classes, 0.0));
    mass[0][cls] += 1.0;
    return;
  }
  auto index = [&](double v, double l, double h) -> std::size_t {
    if (h <= l) return 0;
    const double f = (v - l) / (h - l) * static_cast<double>(bins);
    return std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, std::floor(f))));
  };
  if (x < lo || x > hi) {
    const double nlo = std::min(lo, x), nhi = std::max(hi, x);
    std::vector<std::vector<double>> next(bins, std::vector<double>(classes, 0.0));
    if (hi <= lo) {
      next[index(lo, nlo, nhi)] = mass[0];
    } else {
      const double w = (hi - lo) / static_cast<double>(bins);
      const double nw = (nhi - nlo) / static_cast<double>(bins);
      for (std::size_t j = 0; j < bins; ++j) {
        const double a = lo + static_cast<double>(j) * w, b = a + w;
        const std::size_t first = index(a, nlo, nhi), last = index(b, nlo, nhi);
        for (std::size_t t = first; t <= last; ++t) {
          const double ta = nlo + static_cast<double>(t) * nw, tb = ta + nw;
          const double overlap = std::min(b, tb) - std::max(a, ta);
          if (overlap <= 0) continue;
          const double f = overlap / w;
          for (std::size_t c = 0; c < classes; ++c) next[t][c] += mass[j][c] * f;
        }
      }
    }
    mass = std::move(next);
    lo = nlo;
    hi = nhi;
  }
  mass[index(x, lo, hi)][cls] += 1.0;
}

double ClassHistogram::boundary(std::size_t j) const {
  return lo + static_cast<double>(j) * (hi - lo) / static_cast<double>(mass.size());
}

HoeffdingTree::HoeffdingTree(std::vector<std::string> classes, HoeffdingParams params)
    : classes_(std::move(classes)), params_(params) {
  if (classes_.empty()) throw InvalidArgument("hoeffding tree needs at least one class");
  if (params_.bins < 2) throw InvalidArgument("hoeffding tree needs at least 2 bins");
  if (!(params_.delta > 0 && params_.delta < 1)) throw InvalidArgument("delta must be in (0,1)");
  if (params_.n_min == 0) throw InvalidArgument("n_min must be positive");
  reset();
}

void HoeffdingTree::reset() {
  nodes_.assign(1, TreeNode{});
  nodes_[0].counts.assign(classes_.size(), 0);
  n_seen_ = 0;
}

std::size_t HoeffdingTree::leaf_of(const Event& e) const {
  std::size_t i = 0;
  while (!nodes_[i].leaf) {
    const TreeNode& n = nodes_[i];
    auto it = e.values.find(n.field);
    bool yes = n.missing_yes;
    if (it != e.values.end()) {
      if (n.kind == FieldKind::kNumeric && is_numeric(it->second)) {
        yes = std::get<double>(it->second) <= n.threshold;
      } else if (n.kind == FieldKind::kCategorical && is_categorical(it->second)) {
        yes = std::get<std::string>(it->second) == n.category;
      }
    }
    i = yes ? n.yes : n.no;
  }
  return i;
}

Prediction HoeffdingTree::predict(const Event& e) const {
  const TreeNode& leaf = nodes_[leaf_of(e)];
  double n = 0;
  for (auto c : leaf.counts) n += static_cast<double>(c);
  const double k = static_cast<double>(classes_.size());
  Prediction p;
  p.probs.resize(classes_.size());
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    p.probs[c] = (static_cast<double>(leaf.counts[c]) + 1.0) / (n + k);
  }
  p.cls = argmax(p.probs);
  return p;
}

void HoeffdingTree::learn(const Event& e) {
  const std::size_t cls = class_index(e);
  const std::size_t li = leaf_of(e);
  TreeNode& leaf = nodes_[li];
  ++leaf.counts[cls];
  ++leaf.since_check;
  ++n_seen_;
  for (const auto& [name, v] : e.values) {
    if (is_missing(v)) continue;
    const FieldKind kind = is_numeric(v) ? FieldKind::kNumeric : FieldKind::kCategorical;
    auto [it, inserted] = leaf.observers.try_emplace(name);
    FieldObserver& obs = it->second;
    if (inserted) {
      obs.kind = kind;
      obs.observed.assign(classes_.size(), 0);
    } else if (obs.kind != kind) {
      continue;
    }
    ++obs.observed[cls];
    if (kind == FieldKind::kNumeric) {
      obs.hist.add(std::get<double>(v), cls, params_.bins, classes_.size());
    } else {
      auto& counts = obs.categories[std::get<std::string>(v)];
      if (counts.empty()) counts.assign(classes_.size(), 0);
      ++counts[cls];
    }
  }
  if (leaf.since_check >= params_.n_min) {
    leaf.since_check = 0;
    try_split(li);
  }
}

HoeffdingTree::Candidate HoeffdingTree::best_for(const std::string& field, const FieldObserver& obs,
                                                 const std::vector<std::uint64_t>&) const {
  Candidate best;
  best.field = field;
  best.kind = obs.kind;
  const std::size_t k = classes_.size();
  if (obs.kind == FieldKind::kNumeric) {
    if (obs.hist.empty || obs.hist.hi <= obs.hist.lo) return best;
    const std::size_t bins = obs.hist.mass.size();
    std::vector<double> yes(k, 0.0), no(k, 0.0);
    for (std::size_t b = 0; b < bins; ++b) {
      for (std::size_t c = 0; c < k; ++c) no[c] += obs.hist.mass[b][c];
    }
    for (std::size_t j = 1; j < bins; ++j) {
      for (std::size_t c = 0; c < k; ++c) {
        yes[c] += obs.hist.mass[j - 1][c];
        no[c] -= obs.hist.mass[j - 1][c];
      }
      const double g = split_gain(yes, no);
      if (g > best.gain) {
        best.gain = g;
        best.bin = j;
      }
    }
  } else {
    for (const auto& [cat, counts] : obs.categories) {
      std::vector<double> yes(k), no(k);
      for (std::size_t c = 0; c < k; ++c) {
        yes[c] = static_cast<double>(counts[c]);
        no[c] = static_cast<double>(obs.observed[c] - counts[c]);
      }
      const double g = split_gain(yes, no);
      if (g > best.gain) {
        best.gain = g;
        best.category = cat;
      }
    }
  }
  return best;
}

void HoeffdingTree::try_split(std::size_t li) {
  const TreeNode& leaf = nodes_[li];
  if (leaf.depth >= params_.max_depth) return;
  std::size_t nonzero = 0;
  double n = 0;
  for (auto c : leaf.counts) {
    nonzero += c > 0;
    n += static_cast<double>(c);
  }
  if (nonzero < 2) return;
  Candidate first, second;
  for (const auto& [name, obs] : leaf.observers) {
    Candidate c = best_for(name, obs, leaf.counts);
    if (c.gain > first.gain) {
      second = std::move(first);
      first = std::move(c);
    } else if (c.gain > second.gain) {
      second = std::move(c);
    }
  }
  if (first.gain <= 0) return;
  const double range = std::log2(static_cast<double>(classes_.size()));
  const double eps = hoeffding_bound(range, params_.delta, n);
  if (first.gain - second.gain > eps || eps < params_.tau) split(li, first);
}

void HoeffdingTree::split(std::size_t li, const Candidate& cand) {
  const std::size_t k = classes_.size();
  std::vector<std::uint64_t> yes(k, 0), no(k, 0), missing(k, 0);
  {
    const TreeNode& leaf = nodes_[li];
    const FieldObserver& obs = leaf.observers.at(cand.field);
    for (std::size_t c = 0; c < k; ++c) {
      std::uint64_t y = 0;
      if (cand.kind == FieldKind::kNumeric) {
        double mass = 0;
        for (std::size_t b = 0; b < cand.bin; ++b) mass += obs.hist.mass[b][c];
        y = static_cast<std::uint64_t>(std::max(0.0, std::round(mass)));
      } else {
        y = obs.categories.at(cand.category)[c];
      }
      y = std::min(y, obs.observed[c]);
      yes[c] = y;
      no[c] = obs.observed[c] - y;
      missing[c] = leaf.counts[c] - obs.observed[c];
    }
  }
  const auto sum = [](const std::vector<std::uint64_t>& v) {
    return std::accumulate(v.begin(), v.end(), std::uint64_t{0});
  };
  const bool missing_yes = sum(yes) >= sum(no);
  for (std::size_t c = 0; c < k; ++c) (missing_yes ? yes : no)[c] += missing[c];

  TreeNode y, n;
  y.depth = n.depth = nodes_[li].depth + 1;
  y.counts = std::move(yes);
  n.counts = std::move(no);
  const auto yi = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(std::move(y));
  nodes_.push_back(std::move(n));

  TreeNode& node = nodes_[li];
  const FieldObserver& obs = node.observers.at(cand.field);
  node.leaf = false;
  node.field = cand.field;
  node.kind = cand.kind;
  node.threshold = cand.kind == FieldKind::kNumeric ? obs.hist.boundary(cand.bin) : 0.0;
  node.category = cand.category;
  node.missing_yes = missing_yes;
  node.yes = yi;
  node.no = yi + 1;
  node.observers.clear();
  node.since_check = 0;
}

std::size_t HoeffdingTree::depth() const {
  std::size_t d = 0;
  for (const auto& n : nodes_) {
    if (n.leaf) d = std::max<std::size_t>(d, n.depth);
  }
  return d;
}

std::size_t HoeffdingTree::leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.leaf; }));
}

void HoeffdingTree::save(ByteWriter& w) const {
  w.u32(static_cast<std::uint32_t>(classes_.size()));
  for (const auto& c : classes_) w.str(c);
  w.f64(params_.delta);
  w.u64(params_.n_min);
  w.f64(params_.tau);
  w.u32(params_.bins);
  w.u32(params_.max_depth);
  w.u64(n_seen_);
  w.u32(static_cast<std::uint32_t>(nodes_.size()));
  for (const auto& n : nodes_) {
    w.boolean(n.leaf);
    w.u32(n.depth);
    write_counts(w, n.counts);
    w.u64(n.since_check);
    w.str(n.field);
    w.u8(static_cast<std::uint8_t>(n.kind));
    w.f64(n.threshold);
    w.str(n.category);
    w.boolean(n.missing_yes);
    w.u32(n.yes);
    w.u32(n.no);
    w.u32(static_cast<std::uint32_t>(n.observers.size()));
    for (const auto& [name, obs] : n.observers) {
      w.str(name);
      w.u8(static_cast<std::uint8_t>(obs.kind));
      write_counts(w, obs.observed);
      w.boolean(obs.hist.empty);
      w.f64(obs.hist.lo);
      w.f64(obs.hist.hi);
      w.u32(static_cast<std::uint32_t>(obs.hist.mass.size()));
      for (const auto& bin : obs.hist.mass) {
        w.u32(static_cast<std::uint32_t>(bin.size()));
        for (double m : bin) w.f64(m);
      }
      w.u32(static_cast<std::uint32_t>(obs.categories.size()));
      for (const auto& [cat, counts] : obs.categories) {
        w.str(cat);
        write_counts(w, counts);
      }
    }
  }
}

HoeffdingTree HoeffdingTree::load(ByteReader& r) {
  std::vector<std::string> classes(r.u32());
  for (auto& c : classes) c = r.str();
  HoeffdingParams p;
  p.delta = r.f64();
  p.n_min = r.u64();
  p.tau = r.f64();
  p.bins = r.u32();
  p.max_depth = r.u32();
  HoeffdingTree t(std::move(classes), p);
  t.n_seen_ = r.u64();
  t.nodes_.assign(r.u32(), TreeNode{});
  auto kind = [&r] {
    const auto k = r.u8();
    if (k > 1) throw CorruptState("bad field kind");
    return static_cast<FieldKind>(k);
  };
  for (auto& n : t.nodes_) {
    n.leaf = r.boolean();
    n.depth = r.u32();
    n.counts = read_counts(r);
    n.since_check = r.u64();
    n.field = r.str();
    n.kind = kind();
    n.threshold = r.f64();
    n.category = r.str();
    n.missing_yes = r.boolean();
    n.yes = r.u32();
    n.no = r.u32();
    const auto observers = r.u32();
    for (std::uint32_t i = 0; i < observers; ++i) {
      std::string name = r.str();
      FieldObserver obs;
      obs.kind = kind();
      obs.observed = read_counts(r);
      obs.hist.empty = r.boolean();
      obs.hist.lo = r.f64();
      obs.hist.hi = r.f64();
      obs.hist.mass.resize(r.u32());
      for (auto& bin : obs.hist.mass) {
        bin.resize(r.u32());
        for (double& m : bin) m = r.f64();
      }
      const auto cats = r.u32();
      for (std::uint32_t j = 0; j < cats; ++j) {
        std::string cat = r.str();
        obs.categories[cat] = read_counts(r);
      }
      n.observers.emplace(std::move(name), std::move(obs));
    }
    if (n.counts.size() != t.classes_.size()) throw CorruptState("class count mismatch");
  }
  for (std::size_t i = 0; i < t.nodes_.size(); ++i) {
    const TreeNode& n = t.nodes_[i];
    if (!n.leaf && (n.yes <= i || n.no <= i || n.yes >= t.nodes_.size() || n.no >= t.nodes_.size())) {
      throw CorruptState("tree child index out of range");
    }
  }
  return t;
}

}  // namespace edgestream::learn
