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

#include "edgestream/learn/model_state.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace edgestream::learn {

namespace {

enum LearnerTag : std::uint8_t { kTree = 1, kKMeans = 2, kAnomaly = 3 };

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

void render_node(const HoeffdingTree& t, std::size_t i, std::size_t depth, const std::string& prefix,
                 std::ostringstream& out) {
  const TreeNode& n = t.nodes()[i];
  out << std::string(2 * (depth + 1), ' ') << prefix;
  if (n.leaf) {
    std::uint64_t total = 0;
    for (auto c : n.counts) total += c;
    const double k = static_cast<double>(t.classes().size());
    std::vector<double> probs;
    for (auto c : n.counts) probs.push_back((static_cast<double>(c) + 1.0) / (static_cast<double>(total) + k));
    out << "leaf " << quote(t.classes()[argmax(probs)]) << " [";
    for (std::size_t c = 0; c < probs.size(); ++c) {
      out << (c ? " " : "") << t.classes()[c] << '=' << fmt("%.6f", probs[c]);
    }
    out << "] n=" << total << '\n';
    return;
  }
  out << quote(n.field);
  if (n.kind == FieldKind::kNumeric) {
    out << " <= " << fmt("%.17g", n.threshold);
  } else {
    out << " == " << quote(n.category);
  }
  out << " (missing: " << (n.missing_yes ? "yes" : "no") << ")\n";
  render_node(t, n.yes, depth + 1, "yes: ", out);
  render_node(t, n.no, depth + 1, "no: ", out);
}

void render_tree(const HoeffdingTree& t, std::ostringstream& out) {
  out << "model: hoeffding_tree\n";
  out << "classes:";
  for (const auto& c : t.classes()) out << ' ' << quote(c);
  out << "\ntrained on: " << t.n_seen() << " events\n";
  out << "rules:\n";
  render_node(t, 0, 0, "", out);
}

void render_kmeans(const KMeans& m, std::ostringstream& out) {
  out << "model: kmeans\nk: " << m.k() << "\ncentroids:\n  id n";
  for (const auto& f : m.fields()) out << ' ' << f;
  out << '\n';
  for (std::size_t c = 0; c < m.centroids().size(); ++c) {
    out << "  " << c << ' ' << m.counts()[c];
    for (double x : m.centroids()[c]) out << ' ' << fmt("%.6g", x);
    out << '\n';
  }
}

void render_anomaly(const AnomalyScorer& a, std::ostringstream& out) {
  out << "model: anomaly\nfields:\n  field n mean std\n";
  for (const auto& [name, s] : a.stats().numeric_fields()) {
    out << "  " << name << ' ' << s.n << ' ' << fmt("%.6g", s.mean) << ' ' << fmt("%.6g", s.stddev())
        << '\n';
  }
}

RuleNode rule_node(const HoeffdingTree& t, std::size_t i) {
  const TreeNode& n = t.nodes()[i];
  RuleNode r;
  r.leaf = n.leaf;
  if (n.leaf) {
    std::vector<double> counts(n.counts.begin(), n.counts.end());
    r.cls = t.classes()[argmax(counts)];
    for (auto c : n.counts) r.n += c;
    return r;
  }
  r.field = n.field;
  r.kind = n.kind;
  r.threshold = n.kind == FieldKind::kNumeric ? n.threshold : 0.0;
  r.category = n.category;
  r.missing_yes = n.missing_yes;
  r.children.push_back(rule_node(t, n.yes));
  r.children.push_back(rule_node(t, n.no));
  return r;
}

class RuleParser {
 public:
  explicit RuleParser(std::vector<std::string> lines) : lines_(std::move(lines)) {}

  RuleNode node(std::size_t depth, std::string_view prefix) {
    if (pos_ >= lines_.size()) fail("unexpected end of rules");
    std::string_view line = lines_[pos_++];
    const std::string indent(2 * (depth + 1), ' ');
    if (line.substr(0, indent.size()) != indent) fail("bad indentation");
    line.remove_prefix(indent.size());
    if (line.substr(0, prefix.size()) != prefix) fail("expected '" + std::string(prefix) + "'");
    line.remove_prefix(prefix.size());
    RuleNode r;
    if (line.substr(0, 5) == "leaf ") {
      line.remove_prefix(5);
      r.cls = take_string(line);
      const auto n = line.rfind(" n=");
      if (n == std::string_view::npos) fail("leaf without count");
      r.n = std::stoull(std::string(line.substr(n + 3)));
      return r;
    }
    r.leaf = false;
    r.field = take_string(line);
    if (line.substr(0, 4) == " <= ") {
      line.remove_prefix(4);
      r.kind = FieldKind::kNumeric;
      const auto sp = line.find(' ');
      r.threshold = std::stod(std::string(line.substr(0, sp)));
      line.remove_prefix(sp == std::string_view::npos ? line.size() : sp);
    } else if (line.substr(0, 4) == " == ") {
      line.remove_prefix(4);
      r.kind = FieldKind::kCategorical;
      r.category = take_string(line);
    } else {
      fail("expected <= or ==");
    }
    if (line == " (missing: yes)") {
      r.missing_yes = true;
    } else if (line == " (missing: no)") {
      r.missing_yes = false;
    } else {
      fail("bad missing-value clause");
    }
    r.children.push_back(node(depth + 1, "yes: "));
    r.children.push_back(node(depth + 1, "no: "));
    return r;
  }

  bool done() const { return pos_ == lines_.size(); }

 private:
  std::string take_string(std::string_view& s) {
    if (s.empty() || s[0] != '"') fail("expected quoted string");
    std::size_t i = 1;
    while (i < s.size() && s[i] != '"') i += s[i] == '\\' ? 2 : 1;
    if (i >= s.size()) fail("unterminated string");
    std::string out = nlohmann::json::parse(s.substr(0, i + 1)).get<std::string>();
    s.remove_prefix(i + 1);
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidArgument("rules line " + std::to_string(pos_) + ": " + msg);
  }

  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string learner_kind(const Learner& l) {
  switch (l.index()) {
    case 0: return "hoeffding_tree";
    case 1: return "kmeans";
    default: return "anomaly";
  }
}

std::string serialize_model(const ModelState& m) {
  ByteWriter w;
  w.u8(ModelState::kVersion);
  w.u64(m.fingerprint);
  std::visit(
      [&w](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, HoeffdingTree>) {
          w.u8(kTree);
        } else if constexpr (std::is_same_v<T, KMeans>) {
          w.u8(kKMeans);
        } else {
          w.u8(kAnomaly);
        }
        l.save(w);
      },
      m.learner);
  m.changes.save(w);
  return std::move(w).take();
}

ModelState deserialize_model(std::string_view bytes) {
  ByteReader r(bytes);
  if (const auto v = r.u8(); v != ModelState::kVersion) {
    throw CorruptState("unsupported model state version " + std::to_string(v));
  }
  const std::uint64_t fp = r.u64();
  const auto tag = r.u8();
  auto learner = [&]() -> Learner {
    switch (tag) {
      case kTree: return HoeffdingTree::load(r);
      case kKMeans: return KMeans::load(r);
      case kAnomaly: return AnomalyScorer::load(r);
      default: throw CorruptState("unknown learner tag " + std::to_string(tag));
    }
  }();
  ModelState m{fp, std::move(learner), ChangeLog::load(r)};
  if (!r.done()) throw CorruptState("trailing bytes after model state");
  return m;
}

ModelState deserialize_model(std::string_view bytes, std::uint64_t expected) {
  ModelState m = deserialize_model(bytes);
  if (m.fingerprint != expected) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "model fingerprint %016" PRIx64 " != schema %016" PRIx64,
                  m.fingerprint, expected);
    throw FingerprintMismatch(buf);
  }
  return m;
}

std::string explain_model(const ModelState& m) {
  std::ostringstream out;
  char fp[24];
  std::snprintf(fp, sizeof fp, "%016" PRIx64, m.fingerprint);
  std::visit(
      [&out](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, HoeffdingTree>) {
          render_tree(l, out);
        } else if constexpr (std::is_same_v<T, KMeans>) {
          render_kmeans(l, out);
        } else {
          render_anomaly(l, out);
        }
      },
      m.learner);
  out << "fingerprint: " << fp << '\n';
  out << "changes:\n";
  if (m.changes.entries().empty()) out << "  (none)\n";
  for (const auto& c : m.changes.entries()) {
    out << "  ts=" << c.ts << ' ' << c.detector << ' ' << to_string(c.from) << " -> "
        << to_string(c.to) << " statistic=" << fmt("%.6g", c.statistic) << '\n';
  }
  return out.str();
}

RuleNode rule_tree(const HoeffdingTree& tree) { return rule_node(tree, 0); }

RuleNode parse_rules(std::string_view report) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(report)};
  bool inside = false;
  for (std::string line; std::getline(in, line);) {
    if (!inside) {
      inside = line == "rules:";
      continue;
    }
    if (line.empty() || line[0] != ' ') break;
    lines.push_back(line);
  }
  if (!inside) throw InvalidArgument("report has no rules section");
  RuleParser p(std::move(lines));
  RuleNode root = p.node(0, "");
  if (!p.done()) throw InvalidArgument("trailing lines in rules section");
  return root;
}

}  // namespace edgestream::learn
