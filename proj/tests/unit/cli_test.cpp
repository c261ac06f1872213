#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace treemine::cli {
namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_with(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

constexpr const char* kRunning = "A B C -1 -1 B C -1 D -1 -1\n";

TEST(Cli, MineRunningExample) {
  for (const char* algo : {"base", "eager", "prune"}) {
    const auto r = run_with({"mine", "--minsup", "2", "--algo", algo}, kRunning);
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, "B C -1\t2\tmax\n");
  }
}

TEST(Cli, MineJsonAndSingletons) {
  const auto r = run_with({"mine", "--minsup", "2", "--json", "--include-singletons"}, kRunning);
  ASSERT_EQ(r.code, kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<nlohmann::json> rows;
  while (std::getline(lines, line)) rows.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0]["pattern"], "B");
  EXPECT_EQ(rows[1]["pattern"], "C");
  EXPECT_EQ(rows[2]["pattern"], "B C -1");
  EXPECT_EQ(rows[2]["occurrences"], nlohmann::json::array({2, 2}));
}

TEST(Cli, ReportToFile) {
  const auto path = std::filesystem::temp_directory_path() / "treemine_cli_report.json";
  const auto r = run_with({"mine", "--minsup", "2", "--report", path.string(), "--target", "frequent"}, kRunning);
  ASSERT_EQ(r.code, kExitOk);
  std::ifstream f(path);
  const auto report = nlohmann::json::parse(f);
  EXPECT_EQ(report["tree_nodes"], 6);
  EXPECT_EQ(report["counters"]["frequent"], 1);
  EXPECT_EQ(report["target"], "frequent");
  std::filesystem::remove(path);
}

TEST(Cli, VerifyAgreesWithOracle) {
  const auto gen = run_with({"gen", "--nodes", "40", "--labels", "3", "--seed", "5"});
  ASSERT_EQ(gen.code, kExitOk);
  const auto r = run_with({"verify", "--minsup", "2", "--max-size", "4"}, gen.out);
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_NE(r.out.find("closed: oracle"), std::string::npos);
}

TEST(Cli, GenIsDeterministic) {
  const auto a = run_with({"gen", "--preset", "small"});
  const auto b = run_with({"gen", "--preset", "small", "--seed", "3"});
  const auto c = run_with({"gen", "--preset", "small", "--seed", "4", "--trees", "2"});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(std::count(c.out.begin(), c.out.end(), '\n'), 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_with({}).code, kExitUsage);
  EXPECT_EQ(run_with({"mine", "--algo", "fast"}, kRunning).code, kExitUsage);
  EXPECT_EQ(run_with({"mine", "--minsup", "0"}, kRunning).code, kExitUsage);
  EXPECT_EQ(run_with({"gen", "--nodes", "100", "--max-depth", "1", "--max-fanout", "2"}).code, kExitUsage);
  EXPECT_EQ(run_with({"mine", "-i", "/nonexistent/tree.txt"}).code, kExitIo);
  const auto bad = run_with({"mine"}, "A B -1\nA -1 B\n");
  EXPECT_EQ(bad.code, kExitIo);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run_with({"--help"}).code, kExitOk);
}

TEST(Cli, XmlInput) {
  const auto r = run_with({"mine", "--format", "xml", "--minsup", "2"}, "<a><b><c/></b><b><c/><d/></b></a>");
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "b c -1\t2\tmax\n");
}

}  // namespace
}  // namespace treemine::cli
