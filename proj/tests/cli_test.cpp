#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using cvgame::cli::run;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cvgame_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST(CliEquilibrium, SymmetricClassical) {
  const auto r = call({"equilibrium", "--game", "symmetric-classical", "--k", "3", "--gamma", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.j();
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_NEAR(j["closed_form"]["profits"]["u1"].get<double>(), 1.0, 1e-14);
  EXPECT_TRUE(j["oracle"]["converged"].get<bool>());
  EXPECT_LT(j["oracle"]["max_strategy_diff"].get<double>(), 1e-7);
}

TEST(CliEquilibrium, BayesRegionB) {
  const auto r = call({"equilibrium", "--game", "bayes", "--k", "5", "--theta", "0.5", "--dk", "1.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.j();
  EXPECT_EQ(j["region"], "B");
  EXPECT_EQ(j["closed_form"]["x_star"]["x2H"].get<double>(), 0.0);
}

TEST(CliEquilibrium, BayesFromCosts) {
  const auto r = call({"equilibrium", "--game", "bayes", "--a", "10", "--ch", "6", "--cl", "4", "--no-oracle"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.j();
  EXPECT_DOUBLE_EQ(j["params"]["c1"].get<double>(), 5.0);
  EXPECT_FALSE(j.contains("oracle"));
}

TEST(CliEquilibrium, GammaLimitAndPiExpressions) {
  auto r = call({"equilibrium", "--game", "symmetric-classical", "--k", "2", "--gamma-limit", "--no-oracle"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(r.j()["closed_form"]["profits"]["u1"].get<double>(), 0.5, 1e-8);
  r = call({"payoff", "--game", "symmetric-classical", "--k", "3", "--gamma", "0", "--x1", "1.4142135623730951",
            "--x2", "1.4142135623730951"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(r.j()["payoffs"]["u1"].get<double>(), 1.0, 1e-14);
}

TEST(CliEquilibrium, AnglesAcceptPiExpressions) {
  auto r = call({"equilibrium", "--game", "symmetric-classical", "--k", "3", "--gamma", "pi/8", "--no-oracle"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(r.j()["params"]["gamma"].get<double>(), std::numbers::pi / 8);
  r = call({"finite-a-optimum", "--a", "6", "--c", "1", "--gamma", "3pi/16"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(r.j()["params"]["gamma"].get<double>(), 3 * std::numbers::pi / 16);
  EXPECT_EQ(call({"equilibrium", "--game", "symmetric-classical", "--gamma", "xpi/2"}).code, 2);
  EXPECT_EQ(call({"equilibrium", "--game", "symmetric-classical", "--gamma", "pi/"}).code, 2);
}

TEST(CliEquilibrium, InvalidInputsExitTwo) {
  EXPECT_EQ(call({"equilibrium", "--game", "asym-loss", "--k", "3", "--gamma", "0.3", "--eta", "0"}).code, 2);
  EXPECT_EQ(call({"equilibrium", "--game", "nope"}).code, 2);
  EXPECT_EQ(call({"equilibrium", "--game", "symmetric-classical", "--gamma", "0.8"}).code, 2);
  EXPECT_EQ(call({"equilibrium"}).code, 2);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"equilibrium", "--game", "bayes", "--dk", "3"}).code, 2);
}

TEST(CliPayoff, QuantumFiniteReportsTruncation) {
  const auto r = call({"payoff", "--game", "quantum-finite", "--a", "6", "--c", "1", "--x1", "1.5", "--x2", "1.5",
                       "--gamma", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.j();
  EXPECT_GT(j["truncation"]["m1_max"].get<int>(), 0);
  EXPECT_LE(j["truncation"]["tail_bound"].get<double>(), 1e-12);
}

TEST(CliFinite, Examples) {
  auto r = call({"finite-a-optimum", "--a", "6", "--c", "1", "--gamma-limit"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.j()["u_opt"].get<double>(), 2.02487, 1e-3);
  r = call({"finite-a-optimum", "--a", "4", "--c", "5"});
  EXPECT_EQ(r.code, 2);
  // mean photon number far beyond the truncation ceiling
  r = call({"payoff", "--game", "quantum-finite", "--a", "6", "--c", "1", "--x1", "120", "--x2", "0"});
  EXPECT_EQ(r.code, 3);
}

TEST(CliHelp, EverySubcommand) {
  for (const char* s : {"equilibrium", "payoff", "sweep", "finite-a-optimum"}) {
    const auto r = call({s, "--help"});
    EXPECT_EQ(r.code, 0) << s;
    EXPECT_NE(r.out.find("--"), std::string::npos) << s;
  }
}

TEST_F(TempDir, SweepWritesCsvAndSidecar) {
  const auto csv = dir_ / "fig1.csv";
  auto r = call({"sweep", "--figure", "1", "--series-values", "pi/8", "--out", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto side = json::parse(slurp(csv.string() + ".transitions.json"));
  EXPECT_EQ(side["schema_version"], 1);
  ASSERT_FALSE(side["transitions"].empty());
  const double c = std::sqrt(0.5);
  EXPECT_NEAR(side["transitions"][0]["location"].get<double>(), (1 + c) / (1 + c / 2), 0.01);
  EXPECT_NE(r.err.find("transition:"), std::string::npos);

  const auto again = dir_ / "again.csv";
  ASSERT_EQ(call({"sweep", "--figure", "1", "--series-values", "pi/8", "--out", again.string()}).code, 0);
  EXPECT_EQ(slurp(csv), slurp(again));
}

TEST_F(TempDir, ConfigFileWithFlagOverride) {
  const auto cfg = dir_ / "run.cfg";
  std::ofstream(cfg) << "# equilibrium settings\ngame = symmetric-classical\nk = 3\ngamma = 0.4\nno-oracle = true\n";
  auto r = call({"equilibrium", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.j();
  EXPECT_DOUBLE_EQ(j["params"]["k"].get<double>(), 3.0);
  EXPECT_DOUBLE_EQ(j["params"]["gamma"].get<double>(), 0.4);
  EXPECT_FALSE(j.contains("oracle"));

  r = call({"equilibrium", "--config", cfg.string(), "--k", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(r.j()["params"]["k"].get<double>(), 5.0);

  r = call({"--config", cfg.string(), "equilibrium", "--gamma", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(r.j()["params"]["gamma"].get<double>(), 0.0);

  std::ofstream(dir_ / "bad.cfg") << "bogus = 1\n";
  EXPECT_EQ(call({"equilibrium", "--config", (dir_ / "bad.cfg").string()}).code, 2);
  EXPECT_EQ(call({"equilibrium", "--config", (dir_ / "missing.cfg").string()}).code, 1);
}

TEST_F(TempDir, SweepVerifyReportsSpotCheck) {
  const auto csv = dir_ / "loss.csv";
  const auto r = call({"sweep", "--game", "asym-loss", "--variable", "gamma", "--steps", "21", "--series-variable",
                       "eta", "--series-values", "0.1,0.5,1", "--verify", "--out", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto side = json::parse(slurp(csv.string() + ".transitions.json"));
  EXPECT_LT(side["spot_check_max_gain_over_k2"].get<double>(), 1e-6);
}
