#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "magball/cli.hpp"
#include "magball/io.hpp"

using namespace magball;
using io::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("magball_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ConstructThenVerifyEveryFamily) {
  struct Case {
    std::vector<std::string> args;
    std::string kind;
  };
  const std::vector<Case> cases{
      {{"--family", "bch-lattice", "--p", "3", "--m", "2", "--d", "5", "--kplus", "1", "--kminus", "1"}, "packing"},
      {{"--family", "bose-chowla-10", "--q", "4", "--t", "2"}, "packing"},
      {{"--family", "bose-chowla-10", "--q", "3", "--t", "2", "--set", "s2"}, "packing"},
      {{"--family", "bose-chowla-11", "--q", "3", "--t", "2"}, "packing"},
      {{"--family", "sidon-2fold", "--N", "31", "--k", "2", "--size", "3", "--kplus", "2", "--kminus", "1"}, "packing"},
      {{"--family", "behrend-ruzsa", "--kplus", "1", "--kminus", "1", "--D", "2", "--K", "2", "--p", "101"}, "packing"},
      {{"--family", "covering-product", "--p", "3", "--m", "1", "--t", "2", "--kplus", "1", "--kminus", "1"}, "covering"},
      {{"--family", "lambda-random", "--N", "53", "--t", "2", "--seed", "3"}, "lambda"},
  };
  int i = 0;
  for (const auto& c : cases) {
    auto file = path("c" + std::to_string(i++) + ".json");
    std::vector<std::string> args{"construct"};
    args.insert(args.end(), c.args.begin(), c.args.end());
    args.insert(args.end(), {"--out", file});
    auto r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = Json::parse(std::ifstream(file));
    EXPECT_EQ(doc["claim"], c.kind == "lambda" ? "lambda" : c.kind);
    auto v = run({"verify", c.kind, "--in", file});
    EXPECT_EQ(v.code, 0) << c.args[1] << "\n" << v.out << v.err;
    EXPECT_EQ(Json::parse(v.out)["verdict"], "verified");
  }
}

TEST_F(Cli, RefutedAndUsageExitCodes) {
  EXPECT_EQ(run({"construct", "--family", "no-such"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);

  auto bad = write("bad.json", R"({"group":[8],"elements":[[1],[7]],"kplus":1,"kminus":0,"t":2})");
  auto r = run({"verify", "packing", "--in", bad});
  EXPECT_EQ(r.code, 1) << r.err;
  auto rep = Json::parse(r.out);
  EXPECT_EQ(rep["verdict"], "refuted");
  EXPECT_EQ(rep["oracles"]["splitting"]["witness"]["kind"], "zero_image");

  auto broken = write("broken.json", R"({"group":[8],"elements":[[1],[7)");
  EXPECT_EQ(run({"verify", "packing", "--in", broken}).code, 2);
  EXPECT_EQ(run({"verify", "packing", "--in", path("missing.json")}).code, 2);
}

TEST_F(Cli, LambdaClaimIsChecked) {
  auto bad = write("bad.json", R"({"group":[8],"elements":[[1],[7]],"kplus":1,"kminus":0,"t":2})");
  EXPECT_EQ(run({"verify", "lambda", "--in", bad, "--lambda", "2"}).code, 0);
  EXPECT_EQ(run({"verify", "lambda", "--in", bad, "--lambda", "1"}).code, 1);
}

TEST_F(Cli, LatticeInputNeedsBall) {
  auto l = write("l.json", R"({"n":2,"rows":[[1,5],[0,8]]})");
  EXPECT_EQ(run({"verify", "packing", "--in", l}).code, 2);
  auto r = run({"verify", "packing", "--in", l, "--ball", R"({"n":2,"t":2,"kplus":1,"kminus":0})"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(Json::parse(r.out)["oracles"].contains("pairwise"));
}

TEST_F(Cli, DensityCommand) {
  auto s = write("s.json", R"({"group":[8],"elements":[[1],[3]],"kplus":1,"kminus":0,"t":2})");
  auto r = run({"density", "--in", s});
  ASSERT_EQ(r.code, 0) << r.err;
  auto d = Json::parse(r.out);
  EXPECT_EQ(d["splitter_density"]["density"], "1/2");
  EXPECT_EQ(d["lattice_density"]["density_den"], "8");
}

TEST_F(Cli, TableRows) {
  auto r = run({"table"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::string> lines;
  std::size_t pos = 0, next;
  while ((next = r.out.find("\r\n", pos)) != std::string::npos) {
    lines.push_back(r.out.substr(pos, next - pos));
    pos = next + 2;
  }
  EXPECT_EQ(pos, r.out.size());
  ASSERT_EQ(lines.size(), 9u);
  EXPECT_EQ(lines[0], "family,type,t,kplus,kminus,n,group_order,density_num,density_den,density_decimal,verdict");
  auto has = [&](const std::string& needle) {
    for (const auto& l : lines)
      if (l.find(needle) != std::string::npos) return true;
    return false;
  };
  EXPECT_TRUE(has("bose-chowla-10,packing,2,1,0,3,15,7,15,0.466667,verified"));
  EXPECT_TRUE(has("bose-chowla-11,packing,2,1,1,3,40,19,40,0.475000,verified"));
  EXPECT_TRUE(has("covering-product,covering,2,1,0,6,16,22,16,1.375000,verified"));
  EXPECT_TRUE(has("bch-lattice,packing,2,1,1,8,729,129,729,0.176955,verified"));
  for (std::size_t i = 1; i < lines.size(); ++i) EXPECT_EQ(lines[i].find("refuted"), std::string::npos) << lines[i];
}

TEST_F(Cli, DecodeJsonLines) {
  auto ctx = write("ctx.json", R"({"kind":"s2","q":4,"t":2})");
  auto in = write("in.jsonl", "[1,0,0,0]\n\n[1,1,0,0]\n[0,0,0,0]\n");
  auto r = run({"decode", "--context", ctx, "--in", in});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream ss(r.out);
  std::string line;
  int n = 0;
  while (std::getline(ss, line)) {
    auto o = Json::parse(line);
    EXPECT_EQ(o["status"], "ok");
    EXPECT_EQ(o["decoded"], Json::parse("[0,0,0,0]"));
    ++n;
  }
  EXPECT_EQ(n, 3);

  auto bch = write("bch.json", R"({"kind":"bch","p":3,"m":2,"d":5,"kplus":1,"kminus":1})");
  auto in2 = write("in2.jsonl", "[1,0,0,0,0,0,-1,0]\n");
  auto r2 = run({"decode", "--context", bch, "--in", in2});
  ASSERT_EQ(r2.code, 0) << r2.err;
  EXPECT_EQ(Json::parse(r2.out)["decoded"], Json::parse("[0,0,0,0,0,0,0,0]"));

  auto junk = write("junk.jsonl", "[1,0,0,x]\n");
  EXPECT_EQ(run({"decode", "--context", ctx, "--in", junk}).code, 2);
}

TEST_F(Cli, SearchCommand) {
  auto r = run({"search", "--kind", "bt", "--N", "7", "--t", "2", "--size", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["elements"], Json::parse("[0,1,3]"));
  EXPECT_EQ(run({"search", "--kind", "bt", "--N", "7", "--t", "2", "--size", "4"}).code, 1);
}

TEST_F(Cli, ManifestAndReplay) {
  auto m = path("m.json");
  auto r = run({"--manifest", m, "construct", "--family", "lambda-random", "--N", "53", "--seed", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto man = Json::parse(std::ifstream(m));
  EXPECT_EQ(man["command"], "construct");
  EXPECT_EQ(man["seed"], "9");
  EXPECT_EQ(man["exit_code"], 0);
  EXPECT_EQ(man["result_digest"], cli::fnv1a_hex(r.out));
  auto rep = run({"replay", m});
  EXPECT_EQ(rep.code, 0) << rep.out;
  EXPECT_TRUE(Json::parse(rep.out)["match"].get<bool>());

  man["result_digest"] = "0000000000000000";
  std::ofstream(m) << man.dump();
  EXPECT_EQ(run({"replay", m}).code, 1);
}

TEST_F(Cli, JobsDoNotChangeOutput) {
  auto a = run({"--jobs", "1", "table"});
  auto b = run({"--jobs", "4", "table"});
  EXPECT_EQ(a.out, b.out);
  auto s = write("s.json", R"({"group":[8,5],"elements":[[0,1],[1,1],[3,1]],"kplus":1,"kminus":1,"t":2})");
  EXPECT_EQ(run({"--jobs", "1", "verify", "lambda", "--in", s}).out,
            run({"--jobs", "3", "verify", "lambda", "--in", s}).out);
}

TEST_F(Cli, LimitsAreEnforcedAndRestored) {
  auto ok = run({"construct", "--family", "bose-chowla-10", "--q", "4", "--t", "2"});
  EXPECT_EQ(ok.code, 0);
  auto v = run({"--limits", "enum=3", "verify", "packing", "--in", write("s.json", ok.out)});
  EXPECT_EQ(v.code, 2) << v.out;
  EXPECT_NE(v.err.find("resource limit"), std::string::npos);
  EXPECT_EQ(limits().enumeration, Limits{}.enumeration);
}

TEST_F(Cli, BinaryRuns) {
  const std::string cmd = std::string(MAGBALL_BINARY) + " --version";
  FILE* p = popen(cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  char buf[128] = {};
  auto got = std::fgets(buf, sizeof buf, p);
  EXPECT_EQ(pclose(p), 0);
  ASSERT_NE(got, nullptr);
  EXPECT_NE(std::string(buf).find(cli::kVersion), std::string::npos);
}
