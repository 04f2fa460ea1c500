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
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "edgestream/cli/cli.hpp"
#include "edgestream/connectors/codec.hpp"
#include "edgestream/core/config.hpp"
#include "oracles/controller_oracle.hpp"
#include "support/pipelines.hpp"

namespace edgestream::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testkit::op;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "edgestream");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    unsetenv("S2CE_SEED");
    dir_ = fs::temp_directory_path() / ("edgestream_cli_" + std::to_string(getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("cluster.json", to_json(testkit::three_node_cluster()).dump(2));
    write("gen.json", R"({"kind": "hyperplane", "d": 4, "seed": 5, "noise_prob": 0.05,
                          "schedule": [{"at": 300, "kind": "abrupt"}]})");
    write("tree.json", to_json(testkit::chain({op("src", "source"), op("norm", "normalize"),
                                               op("tree", "hoeffding_tree", testkit::tree_params()),
                                               op("sink", "sink")}))
                           .dump(2));
  }
  void TearDown() override {
    unsetenv("S2CE_SEED");
    fs::remove_all(dir_);
  }

  std::string write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return path(name);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string out(const std::string& name) const { return path(name); }

  fs::path dir_;
};

TEST_F(Cli, GenerateZeroEventsWritesEmptyFile) {
  auto r = cli({"--out", out("g"), "generate", path("gen.json"), "--count", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(fs::file_size(dir_ / "g/stream.txt"), 0u);
  EXPECT_EQ(lines(dir_ / "g/stream.txt.drift"), std::vector<std::string>{"event_n,kind"});
}

TEST_F(Cli, GenerateWritesDecodableRecordsAndDriftTruth) {
  auto r = cli({"--out", out("g"), "generate", path("gen.json"), "--count", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("wrote 1000 events"), std::string::npos);
  EXPECT_NE(r.out.find("events/s"), std::string::npos);
  auto recs = lines(dir_ / "g/stream.txt");
  ASSERT_EQ(recs.size(), 1000u);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    auto e = connectors::decode_event(recs[i]);
    EXPECT_EQ(e.ts, static_cast<std::int64_t>(i));
    EXPECT_EQ(connectors::encode_event(e), recs[i]);
  }
  EXPECT_EQ(lines(dir_ / "g/stream.txt.drift"), (std::vector<std::string>{"event_n,kind", "300,abrupt"}));
}

TEST_F(Cli, GenerateRejectsUnknownKeyWithItsLine) {
  write("bad.json", "{\"kind\": \"hyperplane\",\n \"d\": 3,\n \"colour\": 1}");
  auto r = cli({"--out", out("g"), "generate", path("bad.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("colour"), std::string::npos);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "g/stream.txt"));
}

TEST_F(Cli, SeedFlagBeatsEnvironmentWhichBeatsConfig) {
  auto base = cli({"--out", out("a"), "generate", path("gen.json"), "--count", "50"});
  setenv("S2CE_SEED", "99", 1);
  auto env = cli({"--out", out("b"), "generate", path("gen.json"), "--count", "50"});
  auto flag = cli({"--out", out("c"), "--seed", "99", "generate", path("gen.json"), "--count", "50"});
  auto both = cli({"--out", out("d"), "--seed", "5", "generate", path("gen.json"), "--count", "50"});
  ASSERT_EQ(base.code + env.code + flag.code + both.code, 0);
  EXPECT_NE(slurp(dir_ / "a/stream.txt"), slurp(dir_ / "b/stream.txt"));
  EXPECT_EQ(slurp(dir_ / "b/stream.txt"), slurp(dir_ / "c/stream.txt"));
  EXPECT_EQ(slurp(dir_ / "a/stream.txt"), slurp(dir_ / "d/stream.txt"));
  EXPECT_EQ(json::parse(slurp(dir_ / "b/manifest.json"))["seed"], 99);
  setenv("S2CE_SEED", "not-a-number", 1);
  EXPECT_EQ(cli({"--out", out("e"), "generate", path("gen.json")}).code, 1);
}

TEST_F(Cli, PlaceTrivialPipeline) {
  write("one.json", to_json(testkit::make_pipeline(json::array({op("only", "identity")}), {})).dump());
  write("node.json", R"({"nodes": [{"id": "n", "tier": "cloud", "cpu_capacity": 4, "mem_capacity": 1024}]})");
  auto r = cli({"--out", out("p"), "place", "--pipeline", path("one.json"), "--cluster", path("node.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("only      n"), std::string::npos) << r.out;
  auto pl = placement_from_json(json::parse(slurp(dir_ / "p/placement.json")));
  ASSERT_TRUE(pl.ok());
  EXPECT_EQ(pl.value.node_of("only"), "n");
}

TEST_F(Cli, PlaceInfeasibleExitsThreeNamingTheOperator) {
  json hog = op("hog", "identity");
  hog["cpu_demand"] = 500.0;
  write("hog.json", to_json(testkit::make_pipeline(json::array({op("src", "source"), hog}), {{"src", "hog"}})).dump());
  auto r = cli({"--out", out("p"), "place", "--pipeline", path("hog.json"), "--cluster", path("cluster.json")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("'hog'"), std::string::npos) << r.err;
}

double scalar_cost(const std::string& report) {
  auto at = report.find("scalar_cost");
  return std::stod(report.substr(report.find_first_not_of(' ', at + 11)));
}

TEST_F(Cli, OptimizeNeverRaisesReportedCost) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto file = write("p" + std::to_string(seed) + ".json", to_json(testkit::random_pipeline(seed)).dump());
    for (const std::string obj : {"latency", "energy", "balanced"}) {
      auto g = cli({"--out", out("g"), "place", "--pipeline", file, "--cluster", path("cluster.json"), "--objective", obj});
      auto o = cli({"--out", out("o"), "place", "--pipeline", file, "--cluster", path("cluster.json"), "--objective",
                    obj, "--optimize"});
      ASSERT_EQ(g.code, 0) << g.err;
      ASSERT_EQ(o.code, 0) << o.err;
      EXPECT_LE(scalar_cost(o.out), scalar_cost(g.out) + 1e-6) << "seed " << seed << " " << obj;
    }
  }
}

TEST_F(Cli, DeterministicRunsHaveIdenticalChecksums) {
  ASSERT_EQ(cli({"--out", out("g"), "generate", path("gen.json"), "--count", "2000"}).code, 0);
  write("pl.json", R"({"assignment": {"src": "e1", "norm": "e1", "tree": "e1", "sink": "e1"}})");
  std::vector<json> manifests;
  for (const std::string name : {"r1", "r2"}) {
    auto r = cli({"--out", out(name), "run", "--pipeline", path("tree.json"), "--cluster", path("cluster.json"),
                  "--placement", path("pl.json"), "--input", out("g") + "/stream.txt", "--controls",
                  R"([{"after": 700, "kind": "migrate", "target": "tree", "payload": {"to": "c1"}}])"});
    ASSERT_EQ(r.code, 0) << r.err;
    manifests.push_back(json::parse(slurp(dir_ / name / "manifest.json")));
  }
  EXPECT_EQ(manifests[0]["checksums"], manifests[1]["checksums"]);
  EXPECT_EQ(manifests[0]["mode"], "local-det");
  EXPECT_EQ(manifests[0]["status"], "ok");
  EXPECT_TRUE(manifests[0]["checksums"].contains("outputs/sink.txt"));
  EXPECT_TRUE(manifests[0]["checksums"].contains("models/tree.model"));
  for (const auto& [file, sum] : manifests[0]["checksums"].items()) {
    EXPECT_EQ(sha256_file(dir_ / "r1" / file), sum.get<std::string>()) << file;
  }
  EXPECT_EQ(lines(dir_ / "r1/outputs/sink.txt").size(), 2000u);
  auto log = lines(dir_ / "r1/run.log");
  ASSERT_EQ(log.size(), 1u);
  EXPECT_NE(log[0].find("kind=migrate target=tree from=e1 to=c1"), std::string::npos) << log[0];
}

TEST_F(Cli, ManifestRoundTripsAndMatchesSha256Vectors) {
  write("abc.txt", "abc");
  EXPECT_EQ(sha256_file(dir_ / "abc.txt"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  write("empty.txt", "");
  EXPECT_EQ(sha256_file(dir_ / "empty.txt"), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  RunManifest m;
  m.command = "run";
  m.config_paths = {{"pipeline", "/x/p.json"}};
  m.seed = 18446744073709551615ull;
  m.mode = "sim";
  m.out_dir = "/x/out";
  m.checksums = {{"metrics.csv", "00"}};
  m.status = "ok";
  EXPECT_EQ(manifest_from_json(json::parse(to_json(m).dump())), m);
  m.mode.reset();
  EXPECT_EQ(manifest_from_json(json::parse(to_json(m).dump())), m);
}

TEST_F(Cli, SimulatedOverloadMatchesHandSimulatedController) {
  auto sc = testkit::overload_scenario();
  auto c = testkit::three_node_cluster();
  write("over.json", to_json(sc.pipeline).dump());
  write("over_pl.json", to_json(sc.placement).dump());
  write("work.json", sc.workload.dump());
  const auto expected = oracles::first_overload_migration(sc.pipeline, c, sc.placement, {{1, 850.0}, {5, 2000.0}}, 15);
  ASSERT_TRUE(expected.has_value());
  EXPECT_EQ(expected->interval, 7u);
  EXPECT_EQ(expected->op, "heavy");

  std::string first;
  for (const std::string name : {"s1", "s2"}) {
    auto r = cli({"--out", out(name), "run", "--mode", "sim", "--pipeline", path("over.json"), "--cluster",
                  path("cluster.json"), "--placement", path("over_pl.json"), "--workload", path("work.json"),
                  "--duration-s", "15", "--controller"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = lines(dir_ / name / "decisions.csv");
    ASSERT_EQ(rows.size(), 2u) << slurp(dir_ / name / "decisions.csv");
    EXPECT_EQ(rows[0], "interval,node,action,operator,target,pre_p95_ms,post_p95_ms");
    EXPECT_EQ(rows[1].rfind(std::to_string(expected->interval) + ",e1,offload_to_cloud,heavy,c1,", 0), 0u) << rows[1];
    const auto sums = json::parse(slurp(dir_ / name / "manifest.json"))["checksums"].dump();
    if (first.empty()) {
      first = sums;
    } else {
      EXPECT_EQ(sums, first);
    }
  }
}

TEST_F(Cli, MissingClusterFileExitsOne) {
  auto r = cli({"--out", out("r"), "run", "--pipeline", path("tree.json"), "--cluster", path("absent.json"),
                "--generator", path("gen.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("absent.json"), std::string::npos);
}

TEST_F(Cli, RuntimeFailureExitsTwoAfterWritingTheManifest) {
  write("parse.json", to_json(testkit::chain({op("src", "source"), op("parse", "parse"), op("sink", "sink")})).dump());
  auto r = cli({"--out", out("r"), "run", "--pipeline", path("parse.json"), "--cluster", path("cluster.json"),
                "--generator", path("gen.json"), "--count", "10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("parse"), std::string::npos) << r.err;
  auto m = manifest_from_json(json::parse(slurp(dir_ / "r/manifest.json")));
  EXPECT_EQ(m.status, "exit=2");
  EXPECT_EQ(m.mode, "local-det");

  auto raw = cli({"--out", out("ok"), "run", "--pipeline", path("parse.json"), "--cluster", path("cluster.json"),
                  "--generator", path("gen.json"), "--count", "10", "--raw"});
  EXPECT_EQ(raw.code, 0) << raw.err;
}

TEST_F(Cli, RunWithoutFeasiblePlacementExitsThree) {
  json hog = op("hog", "identity");
  hog["cpu_demand"] = 500.0;
  write("hog.json", to_json(testkit::make_pipeline(json::array({op("src", "source"), hog}), {{"src", "hog"}})).dump());
  auto r = cli({"--out", out("r"), "run", "--pipeline", path("hog.json"), "--cluster", path("cluster.json"),
                "--generator", path("gen.json")});
  EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, BadInvocationsExitOne) {
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({"run", "--pipeline", path("tree.json")}).code, 1);
  EXPECT_EQ(cli({"--out", out("r"), "run", "--pipeline", path("tree.json"), "--cluster", path("cluster.json")}).code, 1);
  EXPECT_EQ(cli({"--out", out("r"), "run", "--pipeline", path("tree.json"), "--cluster", path("cluster.json"),
                 "--generator", path("gen.json"), "--mode", "turbo"})
                .code,
            1);
  EXPECT_EQ(cli({"--out", out("r"), "run", "--pipeline", path("tree.json"), "--cluster", path("cluster.json"),
                 "--generator", path("gen.json"), "--metrics", "../escape.csv"})
                .code,
            1);
  EXPECT_EQ(cli({"--out", out("r"), "run", "--pipeline", path("tree.json"), "--cluster", path("cluster.json"),
                 "--generator", path("gen.json"), "--controls", R"([{"after": 1, "kind": "migrate", "target": "nope"}])"})
                .code,
            1);
  EXPECT_FALSE(fs::exists(dir_ / "escape.csv"));
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(Cli, WritesOnlyInsideTheOutputDirectory) {
  const auto before = fs::current_path();
  const auto work = dir_ / "cwd";
  fs::create_directories(work);
  fs::current_path(work);
  auto r = cli({"--out", "results", "run", "--pipeline", path("tree.json"), "--cluster", path("cluster.json"),
                "--generator", path("gen.json"), "--count", "500", "--mode", "conc", "--controller"});
  fs::current_path(before);
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::string> top;
  for (const auto& e : fs::directory_iterator(work)) top.push_back(e.path().filename().string());
  EXPECT_EQ(top, std::vector<std::string>{"results"});
  std::vector<std::string> root;
  for (const auto& e : fs::directory_iterator(dir_)) root.push_back(e.path().filename().string());
  std::sort(root.begin(), root.end());
  EXPECT_EQ(root, (std::vector<std::string>{"cluster.json", "cwd", "gen.json", "tree.json"}));
  auto m = manifest_from_json(json::parse(slurp(work / "results/manifest.json")));
  EXPECT_EQ(m.mode, "local-conc");
  EXPECT_EQ(m.out_dir, (work / "results").string());
  EXPECT_TRUE(m.checksums.count("decisions.csv"));
}

TEST_F(Cli, ExplainReportsAndChecksFingerprints) {
  write("empty.txt", "");
  const json schema = json::parse(R"({"fields": [{"name": "x0", "kind": "numeric"}]})");
  json tree = op("tree", "hoeffding_tree", testkit::tree_params({{"schema", schema}}));
  write("schema_tree.json",
        to_json(testkit::chain({op("src", "source"), tree, op("sink", "sink")})).dump());
  auto r = cli({"--out", out("r"), "run", "--pipeline", path("schema_tree.json"), "--cluster", path("cluster.json"),
                "--input", path("empty.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto model = out("r") + "/models/tree.model";

  auto e = cli({"explain", "--model", model});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_NE(e.out.find("trained on: 0 events"), std::string::npos) << e.out;
  EXPECT_NE(e.out.find("leaf"), std::string::npos);
  EXPECT_EQ(e.out.find("<="), std::string::npos);

  EXPECT_EQ(cli({"explain", "--model", model, "--pipeline", path("schema_tree.json"), "--op", "tree"}).code, 0);
  EXPECT_EQ(cli({"explain", "--model", model, "--schema", schema.dump()}).code, 0);
  auto wrong = cli({"explain", "--model", model, "--schema", R"({"fields": [{"name": "y", "kind": "numeric"}]})"});
  EXPECT_EQ(wrong.code, 1);
  EXPECT_NE(wrong.err.find("FingerprintMismatch"), std::string::npos);
  EXPECT_EQ(cli({"explain", "--model", model, "--pipeline", path("tree.json"), "--op", "tree"}).code, 1);
  EXPECT_EQ(cli({"explain", "--model", model, "--pipeline", path("tree.json"), "--op", "tree", "--force"}).code, 0);

  fs::copy_file(model, dir_ / "copy.model");
  EXPECT_EQ(cli({"explain", "--model", path("copy.model")}).out, e.out);

  write("junk.model", "not a model");
  EXPECT_EQ(cli({"explain", "--model", path("junk.model")}).code, 1);
}

std::vector<std::vector<std::string>> csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& l : lines(p)) {
    std::vector<std::string> cells;
    std::stringstream s(l);
    for (std::string c; std::getline(s, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

TEST_F(Cli, BenchSingleCandidateNeedsNoRounds) {
  auto r = cli({"--out", out("b"), "bench", "--pipeline", path("tree.json"), "--knobs",
                R"([{"batch_size": 8, "parallelism": 1, "queue_capacity": 64}])", "--events", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(csv(dir_ / "b/tuning.csv").size(), 1u);
  EXPECT_NE(r.out.find("round sizes: 1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("batch_size=8"), std::string::npos);
}

TEST_F(Cli, BenchHalvesFourCandidates) {
  auto r = cli({"--out", out("b"), "bench", "--pipeline", path("tree.json"), "--knobs",
                R"({"batch_size": [1, 64], "parallelism": [1, 2]})", "--events", "4000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("round sizes: 4 2 1\n"), std::string::npos) << r.out;
  auto rows = csv(dir_ / "b/tuning.csv");
  ASSERT_EQ(rows.size(), 7u);
  std::map<std::string, std::vector<std::vector<std::string>>> rounds;
  for (std::size_t i = 1; i < rows.size(); ++i) rounds[rows[i][0]].push_back(rows[i]);
  EXPECT_EQ(rounds["1"].size(), 4u);
  EXPECT_EQ(rounds["2"].size(), 2u);
  const auto winner = r.out.substr(r.out.find("winner: candidate ") + 18, 1);
  for (const auto& [round, entries] : rounds) {
    double best = -1;
    for (const auto& e : entries) {
      if (e[1] == winner) best = std::stod(e[5]);
    }
    for (const auto& e : entries) {
      if (e[7] == "no") {
        EXPECT_GE(best, std::stod(e[5])) << "round " << round;
      }
    }
  }
}

TEST_F(Cli, BenchRejectsEmptyGrid) {
  EXPECT_EQ(cli({"--out", out("b"), "bench", "--pipeline", path("tree.json"), "--knobs", "[]"}).code, 1);
  EXPECT_EQ(cli({"--out", out("b"), "bench", "--pipeline", path("tree.json"), "--knobs", R"({"batch_size": []})"}).code,
            1);
}

TEST_F(Cli, ValidateReportsEachProblem) {
  EXPECT_EQ(cli({"validate", "--pipeline", path("tree.json"), "--cluster", path("cluster.json"), "--generator",
                 path("gen.json")})
                .code,
            0);
  write("cyc.json", R"({"operators": [{"id": "a", "kind": "identity", "cpu_demand": 1, "mem_demand": 1},
                                      {"id": "b", "kind": "identity", "cpu_demand": 1, "mem_demand": 1}],
                        "edges": [{"from": "a", "to": "b"}, {"from": "b", "to": "a"}],
                        "sla": {"max_p95_latency_ms": 10, "min_throughput_eps": 1, "max_monetary_cost": 1}})");
  auto r = cli({"validate", "--pipeline", path("cyc.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cycle"), std::string::npos) << r.err;
  json tree = op("tree", "hoeffding_tree", testkit::tree_params());
  tree["cpu_demand"] = 15.0;
  write("hot.json", to_json(testkit::chain({op("src", "source"), op("norm", "normalize"), tree, op("sink", "sink")})).dump());
  write("pl.json", R"({"assignment": {"src": "e1", "norm": "e1", "tree": "e1", "sink": "e1"}})");
  auto over = cli({"validate", "--pipeline", path("hot.json"), "--cluster", path("cluster.json"), "--placement",
                   path("pl.json")});
  EXPECT_EQ(over.code, 3) << over.err;
  write("cfg.json", "{\"pipeline\": " + slurp(dir_ / "tree.json") + ",\n \"cluster\": " + slurp(dir_ / "cluster.json") + "}");
  EXPECT_EQ(cli({"validate", "--pipeline", path("cfg.json"), "--cluster", path("cfg.json")}).code, 0);
}

TEST_F(Cli, QuietSilencesProgress) {
  auto r = cli({"--quiet", "--out", out("g"), "generate", path("gen.json"), "--count", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
}

}  // namespace
}  // namespace edgestream::cli
