#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "distmatch/io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "distmatch_cli_test";

int run(const std::string& args, const std::string& out = "") {
  std::string cmd = std::string(DISTMATCH_CLI) + " " + args;
  cmd += out.empty() ? " > /dev/null" : " > " + (kWork / out).string();
  cmd += " 2> " + (kWork / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string path(const std::string& name) { return (kWork / name).string(); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
    std::ofstream(kWork / "g.json") << R"({"m":24,"edges":[[1,2],[2,3],[1,3],[5,6]]})";
  }
  void TearDown() override { fs::remove_all(kWork); }
};

TEST_F(Cli, GenMatchAndOracleAgree) {
  ASSERT_EQ(run("gen --graph " + path("g.json") + " --k 3 --rho 1.5 --out " + path("inst")), 0);
  const std::string X = path("inst/X.json");
  const std::string Y = path("inst/Y.json");
  EXPECT_EQ(run("validate --metric " + Y), 0);
  ASSERT_EQ(run("oracle match --pattern " + X + " --space " + Y + " --rho 1.5", "oracle.json"), 0);
  ASSERT_EQ(run("match --pattern " + X + " --space " + Y + " --rho 1.5 --eps 0.1", "match.json"), 0);
  const auto oracle = distmatch::read_json(kWork / "oracle.json");
  const auto match = distmatch::read_json(kWork / "match.json");
  EXPECT_TRUE(oracle["found"].get<bool>());
  EXPECT_TRUE(match["found"].get<bool>());
  EXPECT_LE(match["achieved_rho"].get<double>(), 1.65 + 1e-9);
  EXPECT_EQ(match["matching"].size(), 3u);
  const auto manifest = distmatch::read_json(kWork / "inst/manifest.json");
  EXPECT_EQ(manifest["index_map"].size(), 72u);
}

TEST_F(Cli, NoCliqueMeansNoMatch) {
  std::ofstream(kWork / "sparse.json") << R"({"m":24,"edges":[[0,1]]})";
  ASSERT_EQ(run("gen --graph " + path("sparse.json") + " --k 3 --rho 1.0 --out " + path("inst")), 0);
  EXPECT_EQ(run("oracle match --pattern " + path("inst/X.json") + " --space " + path("inst/Y.json") + " --rho 1.0"), 1);
  EXPECT_EQ(run("oracle clique --graph " + path("sparse.json") + " --k 3"), 1);
}

TEST_F(Cli, SameSeedSameBytes) {
  ASSERT_EQ(run("gen --m 30 --edge-prob 0.2 --plant-clique --k 3 --rho 1.2 --seed 9 --out " + path("a")), 0);
  ASSERT_EQ(run("gen --m 30 --edge-prob 0.2 --plant-clique --k 3 --rho 1.2 --seed 9 --out " + path("b")), 0);
  for (const char* f : {"X.json", "Y.json", "graph.json", "manifest.json"}) {
    EXPECT_EQ(slurp(kWork / "a" / f), slurp(kWork / "b" / f)) << f;
  }
}

TEST_F(Cli, InputErrors) {
  ASSERT_EQ(run("gen --graph " + path("g.json") + " --k 2 --rho 1.0 --out " + path("inst")), 0);
  // Pattern larger than the space.
  EXPECT_EQ(run("match --pattern " + path("inst/Y.json") + " --space " + path("inst/X.json") + " --rho 1 --eps 0.5"), 2);
  EXPECT_EQ(run("match --pattern " + path("missing.json") + " --space " + path("inst/Y.json") + " --rho 1 --eps 0.5"), 2);
  std::ofstream(kWork / "bad.json") << R"({"kind":"matrix","n":3,"d":[[0,5,1],[5,0,1],[1,1,0]]})";
  EXPECT_EQ(run("validate --metric " + path("bad.json"), "report.json"), 1);
  EXPECT_FALSE(distmatch::read_json(kWork / "report.json")["valid"].get<bool>());
}

TEST_F(Cli, DistortNetDumpAndBench) {
  ASSERT_EQ(run("gen --graph " + path("g.json") + " --k 3 --rho 2 --min-distortion --out " + path("inst")), 0);
  ASSERT_EQ(run("distort --pattern " + path("inst/X.json") + " --space " + path("inst/Y.json") + " --eps 0.25",
                "distort.json"),
            0);
  const double delta = distmatch::read_json(kWork / "distort.json")["delta"].get<double>();
  EXPECT_GE(delta, 2.0 - 1e-9);
  EXPECT_LE(delta, 2.5 + 1e-9);
  ASSERT_EQ(run("net-dump --space " + path("inst/Y.json") + " --r-exp 0", "net.json"), 0);
  const auto net = distmatch::read_json(kWork / "net.json");
  EXPECT_EQ(net["r_exp"].get<int>(), 0);
  EXPECT_EQ(net["cover"].size(), 73u);
  ASSERT_EQ(run("bench --sizes 200,400 --out " + path("bench.csv")), 0);
  const std::string csv = slurp(kWork / "bench.csv");
  EXPECT_EQ(csv.rfind("n,k,rho,eps,seconds", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

}  // namespace
