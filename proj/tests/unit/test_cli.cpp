#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "abelsplit/cli.hpp"
#include "abelsplit/json_io.hpp"

using namespace abelsplit;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<Json> json_lines(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(Json::parse(line));
  return out;
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("abelsplit-cli-" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path f = dir_ / name;
    std::ofstream(f) << text;
    return f.string();
  }

  fs::path dir_;
};

}  // namespace

TEST(Cli, ClassifyExamples) {
  const CliRun r = run({"classify", "-p", "5", "-b", "2:2"});
  EXPECT_EQ(r.code, kExitOk);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("outcome"), "DoesNotSplit");
  EXPECT_EQ(j.at("spec").at("p"), 5);

  const CliRun s = run({"classify", "-p", "2", "-b", "1:5", "-b", "4:2"});
  EXPECT_EQ(Json::parse(s.out).at("outcome"), "Splits");
  EXPECT_EQ(Json::parse(run({"classify", "-p", "3", "-b", "2:1", "-b", "3:3"}).out).at("outcome"), "Unknown");
}

TEST(Cli, InvalidInput) {
  const CliRun r = run({"classify", "-p", "4", "-b", "1:1"});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_EQ(Json::parse(r.out).at("error"), "NonPrime");
  EXPECT_EQ(run({"classify", "-p", "3", "-b", "2:1", "-b", "1:1"}).code, kExitInvalid);
  EXPECT_EQ(run({"classify", "-p", "3", "-b", "2-1"}).code, kExitInvalid);
  EXPECT_EQ(run({"no-such-command"}).code, kExitInvalid);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, SectionCommand) {
  const CliRun ok = run({"section", "-p", "3", "-b", "2:2"});
  ASSERT_EQ(ok.code, kExitOk) << ok.err;
  const Json j = Json::parse(ok.out);
  EXPECT_EQ(j.at("verification").at("mode"), "full-table");
  EXPECT_EQ(j.at("verification").at("pairs"), 48 * 48);
  EXPECT_EQ(j.at("certificate").at("origin"), "search");

  const CliRun no = run({"section", "-p", "5", "-b", "2:2"});
  EXPECT_EQ(no.code, kExitNotSplit);
  EXPECT_EQ(Json::parse(no.out).at("verdict").at("outcome"), "DoesNotSplit");

  EXPECT_EQ(run({"section", "-p", "3", "-b", "2:2", "--verify-mode", "sampled"}).code, kExitOk);
  EXPECT_EQ(run({"section", "-p", "3", "-b", "2:2", "--verify-mode", "bogus"}).code, kExitInvalid);
}

TEST(Cli, OracleCommands) {
  const CliRun d = run({"oracle", "delta-count", "-p", "2", "-b", "1:1", "-b", "2:1"});
  ASSERT_EQ(d.code, kExitOk);
  EXPECT_EQ(Json::parse(d.out).at("enumerated"), 8);

  const CliRun o = run({"oracle", "obstruction", "-p", "5", "-b", "2:2"});
  ASSERT_EQ(o.code, kExitOk);
  const Json oj = Json::parse(o.out);
  EXPECT_EQ(oj.at("verdict"), "NoOrderPLift");
  EXPECT_EQ(oj.at("orders_histogram").at("25"), 625);

  const CliRun c = run({"oracle", "complement-search", "-p", "2", "-b", "2:2"});
  ASSERT_EQ(c.code, kExitOk);
  EXPECT_EQ(Json::parse(c.out).at("verdict"), "Found");

  const CliRun b = run({"oracle", "bijective-equiv", "-p", "3", "-b", "1:1", "-b", "2:1", "--samples", "300"});
  ASSERT_EQ(b.code, kExitOk);
  EXPECT_EQ(Json::parse(b.out).at("disagreements"), 0);

  EXPECT_EQ(run({"oracle", "obstruction", "-p", "5", "-b", "2:1"}).code, kExitInvalid);
}

TEST(Cli, BudgetFromEnvironmentAndFlag) {
  ::setenv("ABELSPLIT_BUDGET_DELTA", "10", 1);
  const CliRun env = run({"oracle", "delta-count", "-p", "5", "-b", "2:2"});
  const CliRun flag = run({"oracle", "delta-count", "-p", "5", "-b", "2:2", "--budget-delta", "1000"});
  ::unsetenv("ABELSPLIT_BUDGET_DELTA");
  EXPECT_EQ(env.code, kExitBudget);
  EXPECT_EQ(Json::parse(env.out).at("error"), "BudgetExceeded");
  EXPECT_EQ(flag.code, kExitOk);
  EXPECT_EQ(Json::parse(flag.out).at("enumerated"), 625);
}

TEST_F(CliFiles, BatchRows) {
  const std::string in = write("in.jsonl",
                               "{\"p\":5,\"blocks\":[{\"n\":2,\"r\":2}]}\n"
                               "\n"
                               "{\"p\":3,\"blocks\":[{\"n\":2,\"r\":2}]}\n"
                               "{\"p\":2,\"blocks\":[{\"n\":2,\"r\":1},{\"n\":3,\"r\":4}]}\n");
  const CliRun r = run({"batch", in, "--with-oracle"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = json_lines(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].at("line"), 1);
  EXPECT_EQ(rows[0].at("oracle"), "DoesNotSplit");
  EXPECT_EQ(rows[0].at("agreement"), true);
  EXPECT_EQ(rows[1].at("line"), 3);
  EXPECT_EQ(rows[1].at("oracle"), "Splits");
  EXPECT_EQ(rows[2].at("outcome"), "Unknown");
  EXPECT_TRUE(rows[2].at("agreement").is_null());

  const CliRun csv = run({"batch", in, "--format", "csv"});
  ASSERT_EQ(csv.code, kExitOk);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "line,spec,outcome,rule,oracle,agreement,error");
}

TEST_F(CliFiles, BatchEdgeCases) {
  const CliRun empty = run({"batch", write("empty.jsonl", "")});
  EXPECT_EQ(empty.code, kExitOk);
  EXPECT_EQ(empty.out, "");

  const std::string bad = write("bad.jsonl",
                                "{\"p\":5,\"blocks\":[{\"n\":2,\"r\":2}]}\n"
                                "{\"p\":4,\"blocks\":[{\"n\":1,\"r\":1}]}\n"
                                "not json\n"
                                "{\"p\":3,\"blocks\":[{\"n\":1,\"r\":1}]}\n");
  const CliRun stop = run({"batch", bad});
  EXPECT_EQ(stop.code, kExitInvalid);
  const CliRun cont = run({"batch", bad, "--continue"});
  EXPECT_EQ(cont.code, kExitInvalid);
  const auto rows = json_lines(cont.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_TRUE(rows[1].contains("error"));
  EXPECT_TRUE(rows[2].contains("error"));
  EXPECT_EQ(rows[3].at("outcome"), "Splits");

  EXPECT_EQ(run({"batch", (dir_ / "missing.jsonl").string()}).code, kExitInvalid);
}

TEST_F(CliFiles, RepeatedRunsAreByteIdentical) {
  const std::string in = write("in.jsonl",
                               "{\"p\":3,\"blocks\":[{\"n\":2,\"r\":2}]}\n"
                               "{\"p\":2,\"blocks\":[{\"n\":1,\"r\":1},{\"n\":2,\"r\":2}]}\n"
                               "{\"p\":5,\"blocks\":[{\"n\":1,\"r\":1},{\"n\":2,\"r\":1}]}\n");
  const CliRun a = run({"batch", in, "--with-oracle", "--workers", "1"});
  const CliRun b = run({"batch", in, "--with-oracle", "--workers", "3"});
  EXPECT_EQ(a.out, b.out);
  const CliRun s1 = run({"section", "-p", "2", "-b", "1:1", "-b", "2:2"});
  const CliRun s2 = run({"section", "-p", "2", "-b", "1:1", "-b", "2:2", "--workers", "2"});
  EXPECT_EQ(s1.out, s2.out);
}

TEST_F(CliFiles, CacheCommands) {
  const std::string cache = (dir_ / "cache").string();
  EXPECT_EQ(run({"cache", "list"}).code, kExitInvalid);
  ASSERT_EQ(run({"section", "-p", "3", "-b", "3:2", "--cache-dir", cache}).code, kExitOk);
  const Json list = Json::parse(run({"cache", "list", "--cache-dir", cache}).out);
  EXPECT_EQ(list.size(), 2u);
  const CliRun v = run({"cache", "verify", "--cache-dir", cache});
  EXPECT_EQ(v.code, kExitOk);
  EXPECT_EQ(Json::parse(run({"cache", "clear", "--cache-dir", cache}).out).at("removed"), 2);
}
