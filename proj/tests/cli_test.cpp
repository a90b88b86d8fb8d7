#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "homophily/cli.hpp"
#include "homophily/generators.hpp"
#include "homophily/io.hpp"
#include "json.hpp"

namespace homophily {
namespace {

using nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("homophily_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
    write_file(dir_ / "path.edges", "1 2\n2 3\n");
    write_file(dir_ / "path.labels", "1 A\n2 A\n3 B\n");
    write_file(dir_ / "bad.edges", "1 2\n2 3 -1\n");
    write_file(dir_ / "dummy.json",
               R"({"classes": ["a", "b", "c"],
                   "nodes": [{"id": 1, "label": "a"}, {"id": 2, "label": "a"},
                             {"id": 3, "label": "b"}, {"id": 4, "label": "b"}],
                   "edges": [{"u": 1, "v": 2}, {"u": 3, "v": 4}, {"u": 1, "v": 3}]})");
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string p(const char* name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST(CliHelpersTest, Fnv1a) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(CliHelpersTest, CsvNumbers) {
  EXPECT_EQ(csv_number(-1e-9), "0.0000");
  EXPECT_EQ(csv_number(-0.04684), "-0.0468");
  EXPECT_EQ(csv_number(0.92), "0.9200");
}

TEST_F(CliTest, ComputeJson) {
  const CliRun r = run({"compute", "--graph", p("path.edges"), "--labels", p("path.labels"),
                     "--measures", "unbiased,adjusted", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["header"]["version"], std::string(kToolVersion));
  EXPECT_TRUE(doc["header"]["seed"].is_null());
  const json& values = doc["rows"][0]["values"];
  EXPECT_NEAR(values["adjusted"].get<double>(), -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(values["unbiased"].get<double>(), -1.0, 1e-12);
  EXPECT_EQ(doc["rows"][0]["m"], 2);
}

TEST_F(CliTest, ComputeCsv) {
  const CliRun r = run({"compute", "-g", p("path.edges"), "-l", p("path.labels")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("graph,n,edges,m,edge,node,class,adjusted,unbiased\n"), std::string::npos);
  EXPECT_NE(r.out.find(",3,2,2,0.5000,0.5000,0.0000,-0.3333,-1.0000\n"), std::string::npos);
  EXPECT_EQ(r.out.rfind("# homophily ", 0), 0u);
}

TEST_F(CliTest, ReportsAreReproducible) {
  const std::vector<std::string> args = {"agree", "--pairs", "20", "--seed", "5", "--format", "json"};
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run({"agree", "--pairs", "20", "--seed", "6", "--format", "json"});
  EXPECT_NE(json::parse(a.out)["header"]["config_hash"], json::parse(c.out)["header"]["config_hash"]);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"compute", "-g", p("path.edges"), "-l", p("path.labels"), "--measures", "bogus"})
                .code,
            kExitUsage);
  // Conflicting preprocessing flags.
  EXPECT_EQ(run({"compute", "-g", p("path.edges"), "-l", p("path.labels"), "--simplify",
                 "--undirected"})
                .code,
            kExitUsage);
  EXPECT_EQ(run({"compute", "-g", p("path.edges"), "-l", p("path.labels"), "--merge-mode", "sum"})
                .code,
            kExitUsage);
  EXPECT_EQ(run({"compute", "-g", p("path.edges")}).code, kExitUsage);

  const CliRun bad = run({"compute", "-g", p("bad.edges"), "-l", p("path.labels")});
  EXPECT_EQ(bad.code, kExitParse);
  EXPECT_NE(bad.err.find("bad.edges:2:5"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"compute", "-g", p("missing.edges"), "-l", p("path.labels")}).code, kExitParse);

  // Class homophily alone on a graph with an empty class.
  const CliRun undefined = run({"compute", "-g", p("dummy.json"), "--measures", "class", "--format",
                             "json"});
  EXPECT_EQ(undefined.code, kExitUndefined);
  EXPECT_EQ(json::parse(undefined.out)["rows"][0]["undefined"]["class"], "empty-class-degree");
  EXPECT_EQ(run({"compute", "-g", p("dummy.json"), "--measures", "edge"}).code, kExitOk);
  EXPECT_EQ(run({"--version"}).code, kExitOk);
}

TEST_F(CliTest, PropertiesReport) {
  const CliRun r = run({"properties", "adjusted", "--trials", "200", "--seed", "7", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["header"]["seed"], 7);
  EXPECT_EQ(doc["cells"]["minimal-agreement"], "fail");
  EXPECT_EQ(doc["cells"]["monotonicity"], "fail");
  EXPECT_EQ(doc["cells"]["constant-baseline"], "pass");
  EXPECT_TRUE(doc["mismatches"].empty());
  bool found = false;
  for (const json& c : doc["checks"])
    for (const json& v : c["violations"])
      found = found || v["witness"] == "four-class-edge-deletion";
  EXPECT_TRUE(found);
}

TEST_F(CliTest, GridTable) {
  const CliRun r = run({"grid", "--m", "2..10", "--h=-1..1:0.2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["cells"].size(), 99u);
  EXPECT_NEAR(doc["cells"][11]["h_adjusted"].get<double>(), -0.5, 1e-12);  // m = 3, h = -1
  const CliRun csv = run({"grid", "--m", "3", "--h", "-1,0.6"});
  EXPECT_NE(csv.out.find("\n3,-0.5000,0.5000\n"), std::string::npos) << csv.out;
  EXPECT_EQ(run({"grid", "--m", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"grid", "--h", "0..1"}).code, kExitUsage);
}

TEST_F(CliTest, GenerateThenCompute) {
  const CliRun g = run({"generate", "--kind", "complete-partition", "--sizes", "2,2,2", "--graph-out",
                     p("k.edges"), "--labels-out", p("k.labels")});
  ASSERT_EQ(g.code, 0) << g.err;
  const CliRun c = run({"compute", "-g", p("k.edges"), "-l", p("k.labels")});
  EXPECT_NE(c.out.find(",6,15,3,0.2000,0.2000,0.0000,-0.2000,-0.3333\n"), std::string::npos);

  const CliRun j = run({"generate", "--kind", "sbm", "--sizes", "10,10", "--seed", "4", "--graph-out",
                     p("s.json"), "--format", "json"});
  ASSERT_EQ(j.code, 0) << j.err;
  const LabeledGraph expected = sbm({10, 10}, 0.3, 0.2, 4);
  EXPECT_EQ(json::parse(j.out)["edges"], expected.edge_count());
  EXPECT_EQ(read_graph(p("s.json"), std::nullopt).graph.edge_count(), expected.edge_count());
  EXPECT_EQ(run({"generate", "--kind", "sbm", "--sizes", "10,10", "--graph-out", p("x.edges")}).code,
            kExitUsage);
}

TEST_F(CliTest, AgreeOnCorpus) {
  std::filesystem::create_directories(dir_ / "corpus");
  for (int k = 0; k < 3; ++k) {
    write_file(dir_ / "corpus" / ("g" + std::to_string(k) + ".json"),
               write_json_graph(with_default_names(sbm({8, 8}, 0.6, 0.2, k))));
  }
  const CliRun r = run({"agree", "--corpus", p("corpus"), "--pairs", "30", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["pairs"], 30);
  EXPECT_TRUE(doc["percent"][0][0].is_null());
  EXPECT_EQ(run({"agree", "--corpus", p("nope")}).code, kExitParse);
}

TEST_F(CliTest, DirectedWitness) {
  const CliRun r = run({"directed-witness", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["witnesses"].size(), 2u);
  for (const json& w : doc["witnesses"]) EXPECT_TRUE(w["verified"].get<bool>());
  EXPECT_EQ(doc["witnesses"][1]["matrices"]["T"][0][0], "1/9");
}

}  // namespace
}  // namespace homophily
