#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "lgpot/json_io.hpp"
#include "test_util.hpp"

namespace lgpot {
namespace {

using testutil::corpus_path;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(LGPOT_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

TEST(Cli, PotentialP2EmitsCoefficients) {
  RunResult r = run_cli("potential --geometry " + corpus_path("p2.json") + " --order 9");
  ASSERT_EQ(r.exit_code, 0);
  Json doc = Json::parse(r.out);
  EXPECT_EQ(doc["command"], "potential");
  EXPECT_EQ(doc["prefactor"], "x^-1");
  std::vector<std::string> nums;
  for (const auto& t : doc["potential"]["terms"]) nums.push_back(t["num"].get<std::string>());
  EXPECT_EQ(nums, std::vector<std::string>({"1", "2", "5", "32"}));
  ASSERT_TRUE(doc.contains("invariants"));
  EXPECT_EQ(doc["invariants"]["entries"][0]["num"], "1");   // N_{2,1}
  EXPECT_EQ(doc["invariants"]["entries"][2]["num"], "4");   // N_{8,1}
}

TEST(Cli, PotentialRoundTripsThroughLibrary) {
  RunResult r = run_cli("potential --geometry " + corpus_path("p1xp1.json") + " --order 6");
  ASSERT_EQ(r.exit_code, 0);
  Json doc = Json::parse(r.out);
  std::string emitted = doc["potential"].dump(2);
  EXPECT_EQ(series_to_json(series_from_json(Json::parse(emitted))).dump(2), emitted);
}

TEST(Cli, PotentialF2SkipsExtraction) {
  RunResult r = run_cli("potential --geometry " + corpus_path("f2.json") +
                        " --order 6 --zero-deg-cap 3");
  ASSERT_EQ(r.exit_code, 0);
  Json doc = Json::parse(r.out);
  EXPECT_FALSE(doc.contains("invariants"));
  EXPECT_TRUE(doc["potential"].contains("zero_caps"));
}

TEST(Cli, ThetaTable) {
  RunResult r = run_cli("theta --geometry " + corpus_path("p2.json") + " --order 9 --pmax 2");
  ASSERT_EQ(r.exit_code, 0);
  Json doc = Json::parse(r.out);
  bool found = false;
  for (const auto& e : doc["table"]["entries"])
    if (e["n"] == 1 && e["p"] == 2) {
      EXPECT_EQ(e["num"], "4");
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(Cli, VerifyProductPassesOnP2) {
  RunResult r = run_cli("verify-product --geometry " + corpus_path("p2.json") +
                        " --pmax 3 --order 12");
  ASSERT_EQ(r.exit_code, 0);
  Json doc = Json::parse(r.out);
  EXPECT_TRUE(doc["pass"].get<bool>());
  EXPECT_EQ(doc["checks"].size(), 6u);
}

TEST(Cli, VerifyWdvvPassesOnP2) {
  RunResult r = run_cli("verify-wdvv --geometry " + corpus_path("p2.json") +
                        " --pmax 4 --kmax 8");
  EXPECT_EQ(r.exit_code, 0);
}

TEST(Cli, PeriodGroupedTerms) {
  RunResult r = run_cli("period --laurent " + corpus_path("p2_mirror.json") + " --terms 4");
  ASSERT_EQ(r.exit_code, 0);
  Json doc = Json::parse(r.out);
  const auto& coeffs = doc["period"]["coeffs"];
  ASSERT_EQ(coeffs.size(), 13u);  // grouped: four nonzero terms reach k = 12
  EXPECT_EQ(coeffs[3], "6");
  EXPECT_EQ(coeffs[6], "90");
  EXPECT_EQ(coeffs[9], "1680");
}

TEST(Cli, ComparePeriodVerdicts) {
  std::string p2 = corpus_path("p2.json"), p2m = corpus_path("p2_mirror.json");
  std::string qq = corpus_path("p1xp1.json"), qqm = corpus_path("p1xp1_mirror.json");
  EXPECT_EQ(run_cli("compare-period --geometry " + p2 + " --laurent " + p2m + " --order 12")
                .exit_code,
            0);
  EXPECT_EQ(run_cli("compare-period --geometry " + qq + " --laurent " + qqm + " --order 12")
                .exit_code,
            0);
  RunResult cross =
      run_cli("compare-period --geometry " + p2 + " --laurent " + qqm + " --order 12");
  EXPECT_EQ(cross.exit_code, 1);
  Json doc = Json::parse(cross.out);
  EXPECT_FALSE(doc["pass"].get<bool>());
  EXPECT_EQ(doc["first_mismatch"]["tpow"], 2);
}

TEST(Cli, V10Defaults) {
  RunResult r = run_cli("v10");
  ASSERT_EQ(r.exit_code, 0);
  Json doc = Json::parse(r.out);
  EXPECT_EQ(doc["period"]["coeffs"][0], "1");
  EXPECT_EQ(doc["period"]["coeffs"][1], "0");
  EXPECT_EQ(doc["potential"]["terms"][0]["num"], "1");
}

TEST(Cli, CorpusEnvVarResolvesBareNames) {
  RunResult r = run_cli("potential --geometry p2.json --order 3",
                        "LGPOT_CORPUS=" + std::string(LGPOT_CORPUS_DIR));
  EXPECT_EQ(r.exit_code, 0);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run_cli("potential --geometry /nonexistent.json --order 3").exit_code, 2);

  std::string bad = "/tmp/lgpot_cli_bad.json";
  {
    std::ofstream out(bad);
    out << "{ not json";
  }
  EXPECT_EQ(run_cli("potential --geometry " + bad + " --order 3").exit_code, 2);

  std::string broken = "/tmp/lgpot_cli_broken.json";
  {
    Json j = load_json_file(corpus_path("p2.json"));
    j["anticanonical"] = {4};
    std::ofstream out(broken);
    out << j.dump(2);
  }
  EXPECT_EQ(run_cli("potential --geometry " + broken + " --order 3").exit_code, 2);

  EXPECT_EQ(run_cli("period --laurent " + corpus_path("p2_mirror.json")).exit_code, 2);
}

TEST(Cli, TableFormat) {
  RunResult r = run_cli("potential --geometry " + corpus_path("p2.json") +
                        " --order 9 --format table");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("potential of P2"), std::string::npos);
  EXPECT_NE(r.out.find("32"), std::string::npos);
}

}  // namespace
}  // namespace lgpot
