#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  json doc;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pathsdd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    diamond_ = write("diamond.txt", fixtures::kDiamond);
    zeros_ = write("zeros.json", R"({"logits": [0, 0, 0, 0]})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = pathsdd::cli::run(args, out, err);
    json doc = out.str().empty() ? json() : json::parse(out.str());
    return {code, doc};
  }

  fs::path dir_;
  std::string diamond_;
  std::string zeros_;
};

}  // namespace

TEST_F(CliTest, CompileWritesCircuit) {
  auto r = run({"compile", diamond_, "--out", path("d.sdd"), "--stats"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.doc.contains("decision_count"));
  EXPECT_TRUE(r.doc.contains("stats"));
  EXPECT_TRUE(fs::exists(path("d.sdd")));

  auto c = run({"count", "--circuit", path("d.sdd")});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.doc, json({{"count", "2"}}));
}

TEST_F(CliTest, ThreshUnconditionalAndConditional) {
  auto r = run({"thresh", diamond_, "--logits", zeros_, "-t", "0.0625", "--conditional=false"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.doc["states"].size(), 2u);
  EXPECT_EQ(r.doc["conditional"], false);

  auto low = run({"thresh", diamond_, "--logits", zeros_, "-t", "0.1", "--conditional", "false"});
  EXPECT_EQ(low.doc["states"].size(), 0u);

  auto cond = run({"thresh", diamond_, "--logits", zeros_, "-t", "0.5", "--conditional"});
  EXPECT_EQ(cond.doc["states"].size(), 2u);
  EXPECT_EQ(cond.doc["conditional"], true);
}

TEST_F(CliTest, QueriesWithOracle) {
  auto pqe = run({"pqe", diamond_, "--oracle"});
  ASSERT_EQ(pqe.code, 0);
  EXPECT_EQ(pqe.doc["pqe"], 0.125);
  EXPECT_EQ(pqe.doc["oracle"], "agree");

  auto mpe = run({"mpe", diamond_, "--oracle"});
  EXPECT_EQ(mpe.doc["state"], "0101");

  const auto dominant = write("dom.csv", "1\n0\n1\n0\n");
  auto top = run({"topk", diamond_, "--logits", dominant, "-k", "5", "--oracle"});
  ASSERT_EQ(top.code, 0);
  ASSERT_EQ(top.doc["states"].size(), 2u);
  EXPECT_EQ(top.doc["states"][0]["state"], "1010");
  EXPECT_EQ(top.doc["states"][0]["log_weight"], 2.0);

  auto en = run({"enumerate", diamond_, "--limit", "1", "--oracle"});
  EXPECT_EQ(en.doc["states"].size(), 1u);
  EXPECT_EQ(run({"enumerate", diamond_}).doc["states"].size(), 2u);

  EXPECT_EQ(run({"stats", diamond_, "--oracle"}).code, 0);
  EXPECT_EQ(run({"compile", diamond_, "--oracle", "--serial", "--reduce"}).code, 0);
  EXPECT_EQ(run({"thresh", diamond_, "-t", "0.5", "--conditional", "--oracle"}).code, 0);
}

TEST_F(CliTest, ExportDot) {
  auto r = run({"export-dot", diamond_, "--out", path("d.dot")});
  ASSERT_EQ(r.code, 0);
  std::ifstream f(path("d.dot"));
  std::string text((std::istreambuf_iterator<char>(f)), {});
  EXPECT_NE(text.find("digraph"), std::string::npos);
}

TEST_F(CliTest, GenGridPipeline) {
  auto g = run({"gen-grid", "3", "3", "--out", path("g.txt"), "--seed", "5", "--oracle"});
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(g.doc["paths"], "20");
  auto c = run({"count", path("g.txt"), "--oracle", "--timing"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.doc["count"], "20");
  EXPECT_TRUE(c.doc.contains("timing_ms"));
  auto inline_grid = run({"gen-grid", "1", "1"});
  EXPECT_TRUE(inline_grid.doc.contains("edge_list"));
}

TEST_F(CliTest, DomainErrors) {
  const auto loop = write("loop.txt", "s S\nt T\ne S S\n");
  auto r = run({"count", loop});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.doc["code"], "E_PARSE");
  EXPECT_NE(r.doc["location"].get<std::string>().find("line 3"), std::string::npos);

  const auto cyc = write("cyc.txt", "s S\nt T\ne S A\ne A B\ne B A\ne B T\n");
  EXPECT_EQ(run({"count", cyc}).doc["code"], "E_CYCLE");

  const auto bad_logits = write("bad.csv", "0\n0\n");
  EXPECT_EQ(run({"pqe", diamond_, "--logits", bad_logits}).doc["code"], "E_RANGE");
  EXPECT_EQ(run({"thresh", diamond_, "-t", "2"}).doc["code"], "E_RANGE");

  const auto none = write("none.txt", "s S\nt T\ne S A\ne B T\n");
  EXPECT_EQ(run({"mpe", none}).doc["code"], "E_UNSAT_CONDITION");
  EXPECT_EQ(run({"count", none}).doc["count"], "0");

  const auto dangling = write("bad.sdd", "pathsdd 1 2 4\nF 0\nT 1\nD 3 1 9 0\nroot 3\n");
  EXPECT_EQ(run({"count", "--circuit", dangling}).doc["code"], "E_PARSE");
}

TEST_F(CliTest, OracleChecksCircuitFiles) {
  ASSERT_EQ(run({"compile", diamond_, "--out", path("d.sdd")}).code, 0);
  auto ok = run({"count", diamond_, "--circuit", path("d.sdd"), "--oracle"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.doc["oracle"], "agree");

  // A circuit accepting every state disagrees with the diamond's paths.
  const auto all = write("all.sdd", "pathsdd 1 4 2\nF 0\nT 1\nroot 1\n");
  for (const char* cmd : {"count", "stats", "pqe", "mpe"}) {
    auto r = run({cmd, diamond_, "--circuit", all, "--oracle"});
    EXPECT_EQ(r.code, 3) << cmd;
    EXPECT_EQ(r.doc["code"], "E_ORACLE_MISMATCH") << cmd;
  }
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"count"}).code, 2);
  EXPECT_EQ(run({"thresh", diamond_}).code, 2);
  EXPECT_EQ(run({"topk", diamond_, "-k", "0"}).code, 2);
  EXPECT_EQ(run({"count", "--circuit", "x", "--oracle"}).code, 2);
  EXPECT_EQ(run({"count", diamond_, "--circuit", "x"}).code, 2);
  EXPECT_EQ(run({"compile", "--circuit", "x"}).code, 2);
}
