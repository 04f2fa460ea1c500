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

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>

#include "edgestream/cli/cli.hpp"
#include "edgestream/connectors/io.hpp"
#include "edgestream/core/config.hpp"
#include "edgestream/core/hash.hpp"
#include "edgestream/core/schema.hpp"
#include "edgestream/learn/model_state.hpp"
#include "edgestream/orchestrate/controller.hpp"
#include "edgestream/orchestrate/placement.hpp"
#include "edgestream/orchestrate/tune.hpp"
#include "edgestream/runtime/runtime.hpp"
#include "edgestream/runtime/simulate.hpp"
#include "files.hpp"

namespace edgestream::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Globals {
  std::string out = ".";
  std::string seed;
  bool quiet = false;
};

/// Output directory, manifest and exit-code bookkeeping of one command.
class Session {
 public:
  Session(std::string command, const Globals& g, std::ostream& out, std::ostream& err)
      : out_(out), err_(err), quiet_(g.quiet), null_(nullptr) {
    manifest_.command = std::move(command);
    out_dir_ = fs::absolute(g.out).lexically_normal();
    if (!g.seed.empty()) {
      seed_ = detail::parse_seed(g.seed);
    } else if (const char* env = std::getenv("S2CE_SEED"); env != nullptr && *env != '\0') {
      seed_ = detail::parse_seed(env);
    }
  }

  std::ostream& info() { return quiet_ ? null_ : out_; }
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }
  const std::optional<std::uint64_t>& seed_override() const { return seed_; }
  bool executing() const { return executing_; }

  void config(const std::string& role, const std::string& path) {
    manifest_.config_paths[role] = fs::absolute(path).lexically_normal().string();
  }

  /// Registers an output file under the output directory.
  fs::path artifact(const std::string& rel) {
    const fs::path r = fs::path(rel).lexically_normal();
    if (r.empty() || r.is_absolute() || *r.begin() == "..") {
      throw ConfigError("output '" + rel + "' must stay inside the output directory");
    }
    artifacts_.insert(r.generic_string());
    const fs::path full = out_dir_ / r;
    fs::create_directories(full.parent_path());
    return full;
  }

  /// Writes the manifest and enters the execution phase.
  void begin(std::uint64_t seed, std::optional<std::string> mode) {
    manifest_.seed = seed;
    manifest_.mode = std::move(mode);
    manifest_.out_dir = out_dir_.string();
    fs::create_directories(out_dir_);
    write_manifest();
    executing_ = true;
  }

  int finish(int code) {
    if (!executing_) return code;
    manifest_.status = code == kOk ? "ok" : "exit=" + std::to_string(code);
    manifest_.checksums.clear();
    for (const auto& a : artifacts_) {
      if (fs::exists(out_dir_ / a)) manifest_.checksums[a] = sha256_file(out_dir_ / a);
    }
    write_manifest();
    return code;
  }

 private:
  void write_manifest() {
    std::ofstream f(out_dir_ / "manifest.json");
    if (!f) throw ConfigError("cannot write '" + (out_dir_ / "manifest.json").string() + "'");
    f << to_json(manifest_).dump(2) << "\n";
  }

  std::ostream& out_;
  std::ostream& err_;
  bool quiet_;
  std::ostream null_;
  fs::path out_dir_;
  std::optional<std::uint64_t> seed_;
  RunManifest manifest_;
  std::set<std::string> artifacts_;
  bool executing_ = false;
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  return f;
}

std::string fixed(double v, int digits = 3) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()));
    for (std::size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t k = 0; k < r.size(); ++k) {
      line += r[k];
      if (k + 1 < r.size()) line += std::string(width[k] - r[k].size() + 2, ' ');
    }
    out << line << "\n";
  }
}

std::vector<Event> generate_events(const detail::LoadedGenerator& g, std::uint64_t seed, std::uint64_t n) {
  auto spec = g.spec;
  spec.seed = seed;
  std::unique_ptr<generate::Generator> gen;
  try {
    gen = generate::make_generator(spec, g.fitted ? &*g.fitted : nullptr);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return generate::take(*gen, n);
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string spec;
  std::uint64_t count = 1000;
  std::string name = "stream.txt";
};

int cmd_generate(Session& s, const GenerateArgs& a) {
  auto g = detail::load_generator(a.spec);
  s.config("generator", a.spec);
  const std::uint64_t seed = s.seed_override().value_or(g.spec.seed);
  g.spec.seed = seed;
  const fs::path stream = s.artifact(a.name);
  const fs::path drift = s.artifact(a.name + ".drift");
  s.begin(seed, std::nullopt);

  const auto t0 = std::chrono::steady_clock::now();
  std::unique_ptr<generate::Generator> gen = generate::make_generator(g.spec, g.fitted ? &*g.fitted : nullptr);
  {
    connectors::FileSink sink(stream);
    for (std::uint64_t i = 0; i < a.count; ++i) sink.write(gen->next());
    sink.flush();
  }
  auto f = open_out(drift);
  generate::write_drift_csv(f, gen->boundaries());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  s.info() << "wrote " << a.count << " events to " << stream.string() << " ("
           << fixed(secs > 0 ? static_cast<double>(a.count) / secs : 0.0, 0) << " events/s)\n";
  return kOk;
}

// ---------------------------------------------------------------- place

struct PlaceArgs {
  std::string pipeline;
  std::string cluster;
  std::string objective = "balanced";
  bool optimize = false;
};

void print_cost(std::ostream& out, const PipelineSpec& p, const Placement& pl, const orchestrate::CostEstimate& e,
                const orchestrate::Objective& obj) {
  std::vector<std::vector<std::string>> rows{{"operator", "node", "latency_ms"}};
  for (const auto& op : p.operators) {
    auto it = e.op_latency_ms.find(op.id);
    rows.push_back({op.id, pl.node_of(op.id), it == e.op_latency_ms.end() ? "-" : fixed(it->second)});
  }
  print_table(out, rows);
  out << "\n";
  rows = {{"p95_latency_ms", fixed(e.p95_latency_ms)},
          {"throughput_eps", fixed(e.throughput_eps)},
          {"energy_per_hour", fixed(e.energy_per_hour, 6)},
          {"money_per_hour", fixed(e.money_per_hour, 6)},
          {"scalar_cost", fixed(obj.scalar(e), 6)}};
  for (const auto& [node, u] : e.utilization) rows.push_back({"utilization " + node, fixed(u, 4)});
  print_table(out, rows);
}

int cmd_place(Session& s, const PlaceArgs& a) {
  const auto p = detail::load_pipeline(a.pipeline);
  const auto c = detail::load_cluster(a.cluster);
  s.config("pipeline", a.pipeline);
  s.config("cluster", a.cluster);
  orchestrate::Objective obj;
  try {
    obj = orchestrate::objective_from_string(a.objective);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  const fs::path out = s.artifact("placement.json");
  s.begin(s.seed_override().value_or(p.seed), std::nullopt);

  Placement pl = orchestrate::place_greedy(p, c, obj);
  if (a.optimize) pl = orchestrate::place_local_search(p, c, obj, pl).placement;
  const auto est = orchestrate::estimate_cost(p, c, pl, orchestrate::design_load(p));
  auto f = open_out(out);
  f << to_json(pl).dump(2) << "\n";
  print_cost(s.info(), p, pl, est, obj);
  return kOk;
}

// ---------------------------------------------------------------- run

struct RunArgs {
  std::string pipeline;
  std::string cluster;
  std::string placement;
  std::string objective = "balanced";
  std::string mode = "det";
  std::vector<std::string> inputs;
  std::string generator;
  std::uint64_t count = 10000;
  bool raw = false;
  std::string controls;
  std::string metrics = "metrics.csv";
  double interval_ms = 1000.0;
  std::int64_t lateness_ms = 0;
  double watchdog_s = 10.0;
  orchestrate::RuntimeKnobs knobs;
  std::string workload;
  double duration_s = 10.0;
  bool controller = false;
  orchestrate::ControllerConfig ctl;
};

std::string manifest_mode(const std::string& m) {
  if (m == "det" || m == "local-det") return "local-det";
  if (m == "conc" || m == "local-conc") return "local-conc";
  if (m == "sim") return "sim";
  throw ConfigError("unknown mode '" + m + "' (det, conc or sim)");
}

runtime::Inputs load_inputs(Session& s, const RunArgs& a, const PipelineSpec& p) {
  runtime::Graph g(p);
  std::vector<std::string> sources;
  for (auto i : g.sources()) sources.push_back(g.id(i));
  runtime::Inputs inputs;
  if (!a.inputs.empty() && !a.generator.empty()) throw ConfigError("give --input or --generator, not both");
  for (const auto& spec : a.inputs) {
    std::string src, path = spec;
    if (auto eq = spec.find('='); eq != std::string::npos) {
      src = spec.substr(0, eq);
      path = spec.substr(eq + 1);
    } else if (sources.size() == 1) {
      src = sources.front();
    } else {
      throw ConfigError("input '" + spec + "' must name its source as SOURCE=PATH");
    }
    if (std::find(sources.begin(), sources.end(), src) == sources.end()) {
      throw ConfigError("input names '" + src + "', which is not a source operator");
    }
    if (inputs.count(src)) throw ConfigError("source '" + src + "' has two inputs");
    inputs[src] = detail::load_events(path, a.raw);
    s.config("input:" + src, path);
  }
  if (!a.generator.empty()) {
    const auto gen = detail::load_generator(a.generator);
    s.config("generator", a.generator);
    const std::uint64_t base = s.seed_override().value_or(gen.spec.seed);
    for (const auto& src : sources) {
      auto events = generate_events(gen, sources.size() == 1 ? base : derive_seed(base, src), a.count);
      if (a.raw) {
        for (auto& e : events) e = detail::as_raw(e);
      }
      inputs[src] = std::move(events);
    }
  }
  if (inputs.empty()) throw ConfigError("run needs --input or --generator in this mode");
  return inputs;
}

std::vector<runtime::ScheduledControl> load_controls(const std::string& arg, const PipelineSpec& p) {
  auto controls = runtime::scheduled_controls_from_json(detail::load_json_arg(arg));
  for (const auto& c : controls) {
    if (!c.message.target.empty() && p.find(c.message.target) == nullptr) {
      throw ConfigError("control seq " + std::to_string(c.message.seq) + " targets unknown operator '" +
                        c.message.target + "'");
    }
  }
  return controls;
}

void write_frames(const fs::path& path, const std::vector<runtime::MetricsFrame>& frames) {
  auto f = open_out(path);
  runtime::write_metrics_header(f);
  for (const auto& fr : frames) runtime::write_metrics(f, fr);
}

void write_log(const fs::path& path, const std::vector<std::string>& log) {
  auto f = open_out(path);
  for (const auto& line : log) f << line << "\n";
}

int cmd_run(Session& s, const RunArgs& a) {
  auto p = detail::load_pipeline(a.pipeline);
  const auto c = detail::load_cluster(a.cluster);
  s.config("pipeline", a.pipeline);
  s.config("cluster", a.cluster);
  const std::string mode = manifest_mode(a.mode);
  if (s.seed_override()) p.seed = *s.seed_override();
  std::optional<Placement> pl;
  if (!a.placement.empty()) {
    pl = detail::load_placement(a.placement, p, c);
    s.config("placement", a.placement);
  }
  orchestrate::Objective obj;
  try {
    obj = orchestrate::objective_from_string(a.objective);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (a.controller && !a.controls.empty()) throw ConfigError("--controller and --controls cannot be combined");
  if (!(a.interval_ms > 0)) throw ConfigError("--interval-ms must be > 0");

  runtime::Inputs inputs;
  runtime::SimOptions sim;
  runtime::RunOptions opts;
  if (mode == "sim") {
    if (!a.inputs.empty() || !a.generator.empty()) throw ConfigError("sim mode takes --workload, not event inputs");
    sim.workload = a.workload.empty() ? std::vector<runtime::WorkloadStep>{{0.0, orchestrate::design_load(p)}}
                                      : runtime::workload_from_json(detail::load_json_arg(a.workload));
    sim.duration_s = a.duration_s;
    sim.interval_s = a.interval_ms / 1000.0;
    sim.seed = p.seed;
    if (!a.controls.empty()) throw ConfigError("sim mode takes controller decisions only, not --controls");
  } else {
    inputs = load_inputs(s, a, p);
    if (!a.controls.empty()) {
      opts.controls = load_controls(a.controls, p);
      s.config("controls", a.controls);
    }
    opts.interval_ms = a.interval_ms;
    opts.lateness_ms = a.lateness_ms;
    opts.watchdog_s = a.watchdog_s;
  }

  const fs::path metrics = s.artifact(a.metrics);
  const fs::path log = s.artifact("run.log");
  const fs::path placement_out = s.artifact("placement.json");
  std::optional<fs::path> decisions;
  if (a.controller) decisions = s.artifact("decisions.csv");
  std::map<std::string, fs::path> outputs, models;
  if (mode != "sim") {
    runtime::Graph g(p);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.is_sink(i)) outputs[g.id(i)] = s.artifact("outputs/" + g.id(i) + ".txt");
      const auto kind = g.spec(i).kind;
      if (kind == OperatorKind::kHoeffdingTree || kind == OperatorKind::kKMeans || kind == OperatorKind::kAnomaly) {
        models[g.id(i)] = s.artifact("models/" + g.id(i) + ".model");
      }
    }
  }
  s.begin(p.seed, mode);

  if (!pl) pl = orchestrate::place_greedy(p, c, obj);

  std::ofstream dec;
  orchestrate::ControllerConfig ctl = a.ctl;
  ctl.interval_s = a.interval_ms / 1000.0;
  orchestrate::ControllerState cs(ctl);
  std::uint64_t seq = 1;
  runtime::IntervalHook hook;
  if (decisions) {
    dec = open_out(*decisions);
    orchestrate::write_decisions_header(dec);
    hook = [&](const runtime::MetricsFrame& f, const Placement& current) {
      std::vector<runtime::ControlMessage> out;
      const double eps = f.throughput_eps > 0 ? f.throughput_eps : orchestrate::design_load(p);
      auto plan = orchestrate::offload_step(cs, runtime::utilization_samples(f), current, p, c, obj, eps);
      if (plan) {
        orchestrate::write_decision(dec, *plan);
        out.push_back(runtime::migrate_message(seq++, plan->op, plan->to));
      }
      return out;
    };
  }

  if (mode == "sim") {
    sim.on_interval = hook;
    const auto r = runtime::run_simulated(p, c, *pl, sim);
    write_frames(metrics, r.frames);
    write_log(log, r.log);
    open_out(placement_out) << to_json(r.placement).dump(2) << "\n";
    s.info() << "mode=sim intervals=" << r.frames.size() << " completed=" << r.completed
             << " mean_latency_ms=" << fixed(r.mean_latency_ms) << " migrations=" << r.acks.size()
             << " stall_ms=" << fixed(r.migration_stall_ms) << "\n";
    return kOk;
  }

  opts.on_interval = hook;
  const auto r = mode == "local-det" ? runtime::run_deterministic(p, c, *pl, inputs, opts)
                                     : runtime::run_concurrent(p, c, *pl, inputs, a.knobs, opts);
  for (const auto& [sink, path] : outputs) {
    auto it = r.outputs.find(sink);
    connectors::write_events(path, it == r.outputs.end() ? std::vector<Event>{} : it->second);
  }
  for (const auto& [op, path] : models) {
    auto it = r.model_states.find(op);
    if (it != r.model_states.end()) open_out(path) << it->second;
  }
  write_frames(metrics, r.frames);
  write_log(log, r.log);
  open_out(placement_out) << to_json(r.placement).dump(2) << "\n";
  s.info() << "mode=" << mode << " source_events=" << r.source_events << " sink_events=" << r.sink_events
           << " throughput_eps=" << fixed(r.throughput_eps, 0) << "\n";
  for (const auto& ack : r.acks) {
    if (!ack.applied) s.err() << "warning: control seq " << ack.seq << " not applied: " << ack.detail << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- explain

struct ExplainArgs {
  std::string model;
  std::string pipeline;
  std::string op;
  std::string schema;
  bool force = false;
};

int cmd_explain(Session& s, const ExplainArgs& a) {
  const std::string bytes = detail::read_text(a.model);
  std::optional<std::uint64_t> expected;
  if (!a.schema.empty()) {
    auto parsed = schema_from_json(detail::load_json_arg(a.schema));
    if (!parsed.ok()) throw ConfigError(a.schema + ": " + to_string(parsed.violations.front()));
    expected = schema_fingerprint(parsed.value);
  } else if (!a.pipeline.empty()) {
    if (a.op.empty()) throw ConfigError("--pipeline needs --op to pick the learner");
    const auto p = detail::load_pipeline(a.pipeline);
    const OperatorSpec* op = p.find(a.op);
    if (op == nullptr) throw ConfigError("pipeline has no operator '" + a.op + "'");
    expected = 0;
    if (op->params.is_object() && op->params.contains("schema")) {
      auto parsed = schema_from_json(op->params["schema"]);
      if (!parsed.ok()) throw ConfigError(a.pipeline + ": " + to_string(parsed.violations.front()));
      expected = schema_fingerprint(parsed.value);
    }
  }
  const auto m = [&] {
    try {
      return expected && !a.force ? learn::deserialize_model(bytes, *expected) : learn::deserialize_model(bytes);
    } catch (const Error& e) {
      throw ConfigError(a.model + ": " + e.what());
    }
  }();
  s.out() << learn::explain_model(m);
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string pipeline;
  std::string cluster;
  std::string placement;
  std::string knobs;
  std::string generator;
  std::uint64_t events = 100000;
  bool raw = false;
  double watchdog_s = 30.0;
  std::string report = "tuning.csv";
};

ClusterSpec local_cluster() {
  ClusterSpec c;
  NodeSpec n;
  n.id = "local";
  n.tier = Tier::kCloud;
  n.cpu_capacity = 1e9;
  n.mem_capacity = 1e12;
  c.nodes.push_back(n);
  return c;
}

int cmd_bench(Session& s, const BenchArgs& a) {
  auto p = detail::load_pipeline(a.pipeline);
  s.config("pipeline", a.pipeline);
  if (s.seed_override()) p.seed = *s.seed_override();
  ClusterSpec c;
  Placement pl;
  if (!a.cluster.empty()) {
    c = detail::load_cluster(a.cluster);
    s.config("cluster", a.cluster);
    if (!a.placement.empty()) {
      pl = detail::load_placement(a.placement, p, c);
      s.config("placement", a.placement);
    }
  } else {
    if (!a.placement.empty()) throw ConfigError("--placement needs --cluster");
    c = local_cluster();
    for (auto& op : p.operators) {
      op.pinned_node.reset();
      pl.assignment[op.id] = "local";
    }
  }
  std::vector<orchestrate::RuntimeKnobs> grid;
  try {
    grid = orchestrate::knob_grid_from_json(detail::load_json_arg(a.knobs));
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (grid.empty()) throw ConfigError("knob grid is empty");
  if (a.events == 0) throw ConfigError("--events must be > 0");

  std::optional<detail::LoadedGenerator> gen;
  if (!a.generator.empty()) {
    gen = detail::load_generator(a.generator);
    s.config("generator", a.generator);
  } else {
    generate::GeneratorSpec spec;
    spec.d = 4;
    gen = detail::LoadedGenerator{spec, std::nullopt};
  }
  const std::uint64_t seed = s.seed_override().value_or(gen->spec.seed);
  const fs::path report = s.artifact(a.report);
  s.begin(seed, std::string("local-conc"));

  if (pl.assignment.empty()) pl = orchestrate::place_greedy(p, c, {});
  auto events = generate_events(*gen, seed, a.events);
  if (a.raw) {
    for (auto& e : events) e = detail::as_raw(e);
  }
  runtime::Graph g(p);
  runtime::RunOptions opts;
  opts.watchdog_s = a.watchdog_s;
  opts.interval_ms = 100;
  auto bench = [&](const orchestrate::RuntimeKnobs& k, std::uint64_t n) {
    runtime::Inputs in;
    for (auto i : g.sources()) in[g.id(i)].assign(events.begin(), events.begin() + static_cast<std::ptrdiff_t>(n));
    const auto r = runtime::run_concurrent(p, c, pl, in, k, opts);
    std::vector<double> lat;
    for (const auto& f : r.frames) lat.insert(lat.end(), f.latency_ms.begin(), f.latency_ms.end());
    return orchestrate::BenchResult{r.throughput_eps, runtime::percentile(lat, 0.95)};
  };
  const auto rep = orchestrate::tune_parameters(grid, a.events, bench);

  std::vector<std::vector<std::string>> rows{
      {"round", "candidate", "batch_size", "parallelism", "queue_capacity", "throughput_eps", "p95_ms", "survived"}};
  for (std::size_t r = 0; r < rep.rounds.size(); ++r) {
    for (const auto& e : rep.rounds[r]) {
      const auto& k = grid[e.candidate];
      rows.push_back({std::to_string(r + 1), std::to_string(e.candidate), std::to_string(k.batch_size),
                      std::to_string(k.parallelism), std::to_string(k.queue_capacity),
                      fixed(e.result.throughput_eps, 1), fixed(e.result.p95_latency_ms), e.survived ? "yes" : "no"});
    }
  }
  auto f = open_out(report);
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) f << (k ? "," : "") << row[k];
    f << "\n";
  }
  print_table(s.info(), rows);
  double best = 0.0;
  for (const auto& round : rep.rounds) {
    for (const auto& e : round) {
      if (e.candidate == rep.winner) best = e.result.throughput_eps;
    }
  }
  s.info() << "round sizes:";
  for (auto n : rep.round_sizes) s.info() << " " << n;
  s.info() << "\n";
  s.info() << "winner: candidate " << rep.winner << " " << orchestrate::to_string(rep.knobs)
           << " throughput_eps=" << fixed(best, 1) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  std::string pipeline;
  std::string cluster;
  std::string placement;
  std::string generator;
};

int cmd_validate(Session& s, const ValidateArgs& a) {
  if (a.pipeline.empty() && a.cluster.empty() && a.generator.empty()) {
    throw ConfigError("nothing to validate; give --pipeline, --cluster or --generator");
  }
  std::optional<PipelineSpec> p;
  std::optional<ClusterSpec> c;
  if (!a.pipeline.empty()) {
    p = detail::load_pipeline(a.pipeline);
    s.info() << "pipeline ok: " << p->operators.size() << " operators, " << p->edges.size() << " edges\n";
  }
  if (!a.cluster.empty()) {
    c = detail::load_cluster(a.cluster);
    s.info() << "cluster ok: " << c->nodes.size() << " nodes, " << c->links.size() << " links\n";
  }
  if (!a.generator.empty()) {
    detail::load_generator(a.generator);
    s.info() << "generator ok\n";
  }
  if (!a.placement.empty()) {
    if (!p || !c) throw ConfigError("--placement needs --pipeline and --cluster");
    const auto pl = detail::load_placement(a.placement, *p, *c);
    const auto est = orchestrate::estimate_cost(*p, *c, pl, orchestrate::design_load(*p));
    const auto reasons = orchestrate::infeasibility(*p, *c, pl, est);
    if (!reasons.empty()) {
      for (const auto& r : reasons) s.err() << "infeasible: " << r << "\n";
      return kInfeasible;
    }
    s.info() << "placement ok\n";
  }
  return kOk;
}

template <typename F>
int guarded(Session& s, F&& body) {
  int code;
  try {
    code = body();
  } catch (const orchestrate::PlacementInfeasible& e) {
    s.err() << "infeasible: " << e.what() << "\n";
    code = kInfeasible;
  } catch (const ConfigError& e) {
    s.err() << "error: " << e.what() << "\n";
    code = kConfigError;
  } catch (const std::exception& e) {
    s.err() << "error: " << e.what() << "\n";
    code = s.executing() ? kRuntimeAbort : kConfigError;
  }
  try {
    return s.finish(code);
  } catch (const std::exception& e) {
    s.err() << "error: " << e.what() << "\n";
    return code == kOk ? kRuntimeAbort : code;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stream processing and online learning across edge and cloud nodes", "edgestream"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--seed", g.seed, "64-bit unsigned seed; overrides S2CE_SEED and config seeds");
  app.add_flag("--quiet", g.quiet, "Only print errors and requested reports");

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Write a synthetic stream and its drift ground truth");
  gen->add_option("spec", ga.spec, "Generator spec or config file")->required();
  gen->add_option("--count", ga.count, "Events to write")->capture_default_str();
  gen->add_option("--name", ga.name, "Stream file name inside --out")->capture_default_str();

  PlaceArgs pa;
  auto* place = app.add_subcommand("place", "Compute an initial placement and its predicted cost");
  place->add_option("--pipeline", pa.pipeline)->required();
  place->add_option("--cluster", pa.cluster)->required();
  place->add_option("--objective", pa.objective, "latency, energy, money, balanced or w_lat,w_energy,w_money")
      ->capture_default_str();
  place->add_flag("--optimize", pa.optimize, "Refine the greedy placement by local search");

  RunArgs ra;
  auto* runc = app.add_subcommand("run", "Execute a pipeline");
  runc->add_option("--pipeline", ra.pipeline)->required();
  runc->add_option("--cluster", ra.cluster)->required();
  runc->add_option("--placement", ra.placement, "Placement file; default is the greedy placement");
  runc->add_option("--objective", ra.objective)->capture_default_str();
  runc->add_option("--mode", ra.mode, "det, conc or sim")->capture_default_str();
  runc->add_option("--input", ra.inputs, "[SOURCE=]FILE of text records");
  runc->add_option("--generator", ra.generator, "Generator spec feeding every source");
  runc->add_option("--count", ra.count, "Events per source from --generator")->capture_default_str();
  runc->add_flag("--raw", ra.raw, "Feed records unparsed in a 'raw' field");
  runc->add_option("--controls", ra.controls, "Scheduled controls (file or inline JSON)");
  runc->add_option("--metrics", ra.metrics, "Metrics CSV inside --out")->capture_default_str();
  runc->add_option("--interval-ms", ra.interval_ms)->capture_default_str();
  runc->add_option("--lateness-ms", ra.lateness_ms)->capture_default_str();
  runc->add_option("--watchdog-s", ra.watchdog_s)->capture_default_str();
  runc->add_option("--batch-size", ra.knobs.batch_size)->capture_default_str();
  runc->add_option("--parallelism", ra.knobs.parallelism)->capture_default_str();
  runc->add_option("--queue-capacity", ra.knobs.queue_capacity)->capture_default_str();
  runc->add_option("--workload", ra.workload, "sim: events/s, or [{\"at_s\",\"eps\"}...] (file or inline)");
  runc->add_option("--duration-s", ra.duration_s, "sim: virtual seconds")->capture_default_str();
  runc->add_flag("--controller", ra.controller, "Run the offload controller each interval; writes decisions.csv");
  runc->add_option("--hi", ra.ctl.hi)->capture_default_str();
  runc->add_option("--lo", ra.ctl.lo)->capture_default_str();
  runc->add_option("--patience", ra.ctl.patience)->capture_default_str();
  runc->add_option("--cooldown", ra.ctl.cooldown)->capture_default_str();

  ExplainArgs ea;
  auto* explain = app.add_subcommand("explain", "Print the rules or clusters of a saved model");
  explain->add_option("--model", ea.model)->required();
  explain->add_option("--pipeline", ea.pipeline, "Check the fingerprint against this pipeline's operator");
  explain->add_option("--op", ea.op);
  explain->add_option("--schema", ea.schema, "Check the fingerprint against this schema (file or inline)");
  explain->add_flag("--force", ea.force, "Skip the fingerprint check");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Tune runtime knobs by successive halving");
  bench->add_option("--pipeline", ba.pipeline)->required();
  bench->add_option("--cluster", ba.cluster, "Default is one unbounded local node, ignoring pins");
  bench->add_option("--placement", ba.placement);
  bench->add_option("--knobs", ba.knobs, "Knob grid (file or inline JSON)")->required();
  bench->add_option("--generator", ba.generator, "Default is a 4-dimensional hyperplane");
  bench->add_option("--events", ba.events, "Event budget")->capture_default_str();
  bench->add_flag("--raw", ba.raw, "Feed records unparsed in a 'raw' field");
  bench->add_option("--watchdog-s", ba.watchdog_s)->capture_default_str();
  bench->add_option("--report", ba.report, "Per-round CSV inside --out")->capture_default_str();

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check config files");
  validate->add_option("--pipeline", va.pipeline);
  validate->add_option("--cluster", va.cluster);
  validate->add_option("--placement", va.placement);
  validate->add_option("--generator", va.generator);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  std::optional<Session> s;
  try {
    s.emplace(name, g, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  if (name == "generate") return guarded(*s, [&] { return cmd_generate(*s, ga); });
  if (name == "place") return guarded(*s, [&] { return cmd_place(*s, pa); });
  if (name == "run") return guarded(*s, [&] { return cmd_run(*s, ra); });
  if (name == "explain") return guarded(*s, [&] { return cmd_explain(*s, ea); });
  if (name == "bench") return guarded(*s, [&] { return cmd_bench(*s, ba); });
  return guarded(*s, [&] { return cmd_validate(*s, va); });
}

}  // namespace edgestream::cli
