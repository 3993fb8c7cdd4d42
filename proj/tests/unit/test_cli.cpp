#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "output.hpp"

namespace gtank::cli {
namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gtank");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return std::string(GTANK_TEST_DATA_DIR) + "/" + name; }

TEST(CliEstimate, StatisticForTheLine) {
  const CliRun r = run_cli({"estimate", "--k", "5", "--stat", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["schema_version"], "1.0");
  EXPECT_EQ(j["command"], "estimate");
  EXPECT_EQ(j["results"]["estimates"][0]["estimator"], "d1_max");
  EXPECT_EQ(j["results"]["estimates"][0]["estimate"].get<double>(), 9.8);
  EXPECT_EQ(j["provenance"][0]["formula_id"], "gtp.1d.discrete.max");
}

TEST(CliEstimate, ObservationFiles) {
  const CliRun square = run_cli({"estimate", "--geometry", "square", "--observations", data("square_pairs.txt")});
  ASSERT_EQ(square.code, 0) << square.err;
  EXPECT_EQ(square.json()["results"]["estimates"][0]["estimate"].get<double>(), 7.0);
  EXPECT_TRUE(square.json()["results"]["estimates"][0]["approximate"].get<bool>());

  const CliRun serials = run_cli({"estimate", "--observations", data("serials.txt"), "--estimators",
                               "d1_max,d1_spread,d1_lth:2"});
  ASSERT_EQ(serials.code, 0) << serials.err;
  const Json est = serials.json()["results"]["estimates"];
  ASSERT_EQ(est.size(), 3u);
  EXPECT_DOUBLE_EQ(est[0]["estimate"].get<double>(), 32.75);
  EXPECT_DOUBLE_EQ(est[1]["estimate"].get<double>(), 39.0);

  const CliRun ball = run_cli({"estimate", "--geometry", "ball", "--mode", "continuous", "--dim", "3",
                            "--observations", data("ball3_continuous.txt")});
  EXPECT_EQ(ball.code, 0) << ball.err;
}

TEST(CliEstimate, BallStatistic) {
  const CliRun r = run_cli({"estimate", "--geometry", "ball", "--k", "10", "--stat", "10001"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json()["results"]["estimates"][0]["estimate"].get<double>(), 104.880884817, 1e-9);
}

TEST(CliEstimate, UsageErrors) {
  EXPECT_EQ(run_cli({"estimate", "--k", "5", "--stat", "9.5"}).code, 2);
  EXPECT_EQ(run_cli({"estimate", "--k", "5", "--stat", "3"}).code, 2);
  EXPECT_EQ(run_cli({"estimate", "--stat", "9"}).code, 2);
  EXPECT_EQ(run_cli({"estimate", "--k", "5", "--stat", "9", "--estimators", "ball_discrete"}).code, 2);
  EXPECT_EQ(run_cli({"estimate", "--observations", "/nonexistent/file"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  const CliRun bad = run_cli({"estimate", "--k", "5", "--stat", "3"});
  EXPECT_TRUE(bad.out.empty());
  EXPECT_NE(bad.err.find("impossible observation"), std::string::npos);
}

TEST(CliSimulate, ByteIdenticalOutput) {
  const std::vector<std::string> args{"simulate", "--N", "1000", "--k", "10", "--trials", "5000", "--seed", "42"};
  const CliRun a = run_cli(args);
  const CliRun b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--workers", "4"});
  EXPECT_EQ(run_cli(threaded).out, a.out);
  EXPECT_EQ(a.out.find("wall_seconds"), std::string::npos);
}

TEST(CliSimulate, ReportFields) {
  const CliRun r = run_cli({"simulate", "--N", "100", "--k", "5", "--seed", "1", "--trials", "200", "--timing"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = r.json()["results"];
  EXPECT_EQ(res["rng_algorithm_id"], "mt19937_64/splitmix64-child-seeds/v1");
  EXPECT_EQ(res["master_seed"], 1);
  EXPECT_EQ(res["trials"], 200);
  EXPECT_EQ(res["true_parameter"].get<double>(), 100.0);
  EXPECT_TRUE(res.contains("wall_seconds"));

  const CliRun defaulted = run_cli({"simulate", "--N", "20", "--k", "2"});
  EXPECT_EQ(defaulted.json()["results"]["trials_source"], "default");
  EXPECT_EQ(defaulted.json()["results"]["trials"], 10000);
}

TEST(CliSimulate, CsvRoundTripsDoubles) {
  const CliRun r = run_cli({"simulate", "--N", "100", "--k", "5", "--seed", "3", "--trials", "500", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header.rfind("estimator,mean,variance,bias,standard_error", 0), 0u);
  const std::string mean_text = row.substr(row.find(',') + 1, row.find(',', row.find(',') + 1) - row.find(',') - 1);
  const CliRun j = run_cli({"simulate", "--N", "100", "--k", "5", "--seed", "3", "--trials", "500"});
  EXPECT_EQ(std::strtod(mean_text.c_str(), nullptr), j.json()["results"]["estimators"][0]["mean"].get<double>());
}

TEST(CliSimulate, ErrorsAndCaps) {
  EXPECT_EQ(run_cli({"simulate", "--geometry", "ball", "--N", "10", "--k", "2"}).code, 2);
  EXPECT_EQ(run_cli({"simulate", "--N", "10", "--k", "2", "--estimators", "ball_continuous"}).code, 2);
  EXPECT_EQ(run_cli({"simulate", "--N", "10", "--k", "11"}).code, 2);
  ::setenv("GTANK_TRIAL_CAP", "10", 1);
  const CliRun capped = run_cli({"simulate", "--N", "10", "--k", "2", "--trials", "11"});
  ::unsetenv("GTANK_TRIAL_CAP");
  EXPECT_EQ(capped.code, 4);
}

TEST(CliChecks, OracleAndVerifyPass) {
  const CliRun oracle = run_cli({"oracle", "--max-N", "12"});
  ASSERT_EQ(oracle.code, 0) << oracle.err;
  EXPECT_TRUE(oracle.json()["results"]["all_passed"].get<bool>());

  const CliRun verify = run_cli({"verify", "--identities", "--max-N", "10"});
  ASSERT_EQ(verify.code, 0) << verify.err;
  for (const Json& check : verify.json()["results"]["checks"]) EXPECT_EQ(check["failed"], 0);

  EXPECT_EQ(run_cli({"verify", "--gauss-circle", "--max-r", "50", "--format", "csv"}).code, 0);
}

TEST(CliChecks, SkippedCasesExitWithResourceCode) {
  ::setenv("GTANK_ORACLE_CAP", "100", 1);
  const CliRun r = run_cli({"oracle", "--max-N", "12"});
  ::unsetenv("GTANK_ORACLE_CAP");
  EXPECT_EQ(r.code, 4);
  EXPECT_FALSE(r.json()["results"]["checks"][0]["skipped"].empty());
}

TEST(CliCompare, Runs) {
  const CliRun r = run_cli({"compare", "--N", "20", "--k", "2", "--trials", "3000", "--recursive"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = r.json()["results"];
  EXPECT_EQ(res["winner"], "1d");
  EXPECT_LE(res["recursive_experiment"]["max_fixed_point_error"].get<double>(), 1e-9);
  EXPECT_EQ(run_cli({"compare", "--N", "1", "--k", "2"}).code, 2);
}

}  // namespace
}  // namespace gtank::cli
