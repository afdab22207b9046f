// The hornkit executable: outputs, exit codes, byte stability.
#include "common.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using hornkit::io::json;
using hornkit::testing::fixture;

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
};

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream b;
  b << in.rdbuf();
  return b.str();
}

std::filesystem::path scratch_dir() {
  auto d = std::filesystem::temp_directory_path() / ("hornkit_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(d);
  return d;
}

CliRun run(const std::string &args, const std::string &env = "") {
  auto d = scratch_dir();
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(HORNKIT_CLI) + " " + args + " >" +
                    (d / "out").string() + " 2>" + (d / "err").string();
  int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(d / "out");
  r.err = slurp(d / "err");
  return r;
}

std::string fx(const char *name) { return fixture(name); }

}  // namespace

TEST(Cli, AnalyzeZonotope) {
  CliRun r = run("analyze " + fx("zonotope.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["rank"], 31);
  EXPECT_EQ(j["persistent_dim"], 6);
  EXPECT_EQ(j["classification"]["kind"], "Zonotope");
  EXPECT_EQ(j["rank_attained"], true);
  EXPECT_EQ(j["S_per_vertex"].size(), 8u);
}

TEST(Cli, AnalyzeTriangleWithSides) {
  CliRun r = run("analyze " + fx("triangle_sides.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["rank"], 40);
  EXPECT_EQ(j["persistent_dim"], 5);
  EXPECT_EQ(j["classification"]["kind"], "TrianglePlusSegments");
}

TEST(Cli, MalformedJsonExitsTwo) {
  auto d = scratch_dir();
  std::ofstream(d / "bad.json") << "{\"matrix\": [[1, 0],";
  CliRun r = run("analyze " + (d / "bad.json").string());
  EXPECT_EQ(r.code, 2);
  json e = json::parse(r.err);
  EXPECT_EQ(e["error"], "parse");
}

TEST(Cli, MissingFileExitsTwo) { EXPECT_EQ(run("rank " + fx("absent.json")).code, 2); }

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate " + fx("zonotope.json")).code, 2);
  EXPECT_EQ(run("analyze --window x " + fx("zonotope.json")).code, 2);
  CliRun r = run("render --what pie " + fx("zonotope.json"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.err)["error"], "parse");
}

TEST(Cli, ConfluentInputExitsThree) {
  CliRun r = run("analyze " + fx("atomic_32_43.json"));
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(json::parse(r.err)["error"], "precondition");
  CliRun ok = run("analyze --allow-confluent " + fx("atomic_32_43.json"));
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(json::parse(ok.out)["nonconfluent"], false);
}

TEST(Cli, SolveAtomic) {
  CliRun r = run("solve " + fx("atomic_32_43.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["polynomial_exponents"].size(), 8u);
  ASSERT_EQ(j["solutions"].size(), 8u);
  size_t monomials = 0;
  for (const auto &s : j["solutions"]) {
    EXPECT_EQ(s["verified"], true);
    EXPECT_EQ(s["persistent"], true);
    monomials += s["terms"].size() == 1;
  }
  EXPECT_EQ(monomials, 6u);
}

TEST(Cli, SolveSimplexAndZonotope) {
  CliRun a = run("solve " + fx("triangle_simplex.json"));
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(json::parse(a.out)["solutions"].size(), 4u);
  CliRun b = run("solve --window 32 " + fx("zonotope.json"));
  ASSERT_EQ(b.code, 0) << b.err;
  json j = json::parse(b.out);
  EXPECT_EQ(j["solutions"].size(), 31u);
  EXPECT_EQ(j["rank_attained"], true);
  EXPECT_EQ(j["window"], 32);
}

TEST(Cli, WindowFromEnvironment) {
  CliRun r = run("solve " + fx("triangle_simplex.json"), "HORNKIT_WINDOW=17");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["window"], 17);
  CliRun flag = run("solve --window 9 " + fx("triangle_simplex.json"), "HORNKIT_WINDOW=17");
  EXPECT_EQ(json::parse(flag.out)["window"], 9);
  EXPECT_EQ(run("solve " + fx("triangle_simplex.json"), "HORNKIT_WINDOW=abc").code, 2);
}

TEST(Cli, ClassifyAndRank) {
  CliRun c = run("classify " + fx("quadrilateral.json"));
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(json::parse(c.out)["classification"]["kind"], "Other");
  CliRun t = run("classify " + fx("triangle_sides.json"));
  EXPECT_EQ(json::parse(t.out)["resum_matches"], true);
  CliRun r = run("rank " + fx("simplicial.json"));
  json j = json::parse(r.out);
  EXPECT_EQ(j["rank"], 4);
  EXPECT_EQ(j["persistent_dim"], 0);
}

TEST(Cli, Series) {
  CliRun r = run("series --pair 1 2 " + fx("rank_one.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["verified"], true);
  EXPECT_EQ(j["order_consistent"], true);
  EXPECT_EQ(j["alpha0"], json::array({"-1/3", "-1/5"}));
  EXPECT_EQ(j["coefficients"][0]["coefficient"], "1");
  EXPECT_EQ(run("series --pair 1 1 " + fx("rank_one.json")).code, 3);
}

TEST(Cli, VerifyListedAndWrongSolutions) {
  auto d = scratch_dir();
  std::ofstream(d / "good.json") << R"([{"exponent": [0, 0], "coefficient": 4}, {"exponent": [1, 0], "coefficient": 2},
    {"exponent": [0, 1], "coefficient": 2}, {"exponent": [1, 1], "coefficient": 6},
    {"exponent": [2, 1], "coefficient": 1}, {"exponent": [1, 2], "coefficient": 1}])";
  std::ofstream(d / "x1.json") << R"([{"exponent": ["1", "0"], "coefficient": "1"}])";
  std::ofstream(d / "pers.json") << R"({"terms": [{"exponent": ["0", "1"], "coefficient": "1"}]})";
  CliRun good = run("verify --solution " + (d / "good.json").string() + " " + fx("triangle_simplex.json"));
  ASSERT_EQ(good.code, 0) << good.err;
  EXPECT_EQ(json::parse(good.out)["is_solution"], true);
  EXPECT_EQ(json::parse(good.out)["is_persistent"], false);
  CliRun bad = run("verify --solution " + (d / "x1.json").string() + " " + fx("triangle_simplex.json"));
  json b = json::parse(bad.out);
  EXPECT_EQ(b["is_solution"], false);
  EXPECT_FALSE(b["residuals"].empty());
  EXPECT_LE(b["residuals"].size(), 5u);
  CliRun pers = run("verify --solution " + (d / "pers.json").string() + " " + fx("zonotope.json"));
  EXPECT_EQ(json::parse(pers.out)["is_persistent"], true);
  EXPECT_EQ(run("verify " + fx("zonotope.json")).code, 2);
}

TEST(Cli, SuggestParameters) {
  CliRun r = run("suggest-params " + fx("triangle_simplex.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["found"], true);
  EXPECT_EQ(j["parameters"], json::array({"-3", "-1", "-1"}));
  EXPECT_EQ(run("suggest-params " + fx("quadrilateral.json")).code, 3);
}

TEST(Cli, RenderIsByteStable) {
  auto d = scratch_dir();
  for (const char *what : {"polygon", "supports"}) {
    std::string a = (d / (std::string(what) + "_a.svg")).string(), b = (d / (std::string(what) + "_b.svg")).string();
    ASSERT_EQ(run(std::string("render --what ") + what + " --out " + a + " " + fx("zonotope.json")).code, 0);
    ASSERT_EQ(run(std::string("render --what ") + what + " --out " + b + " " + fx("zonotope.json")).code, 0);
    std::string sa = slurp(a);
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, slurp(b));
  }
}

TEST(Cli, OutFileMatchesStdout) {
  auto d = scratch_dir();
  std::string path = (d / "rank.json").string();
  CliRun a = run("rank --out " + path + " " + fx("zonotope.json"));
  ASSERT_EQ(a.code, 0);
  EXPECT_TRUE(a.out.empty());
  EXPECT_EQ(slurp(path), run("rank " + fx("zonotope.json")).out);
}
