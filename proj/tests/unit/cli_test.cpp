#include <gtest/gtest.h>

#include "json.hpp"
#include <sstream>

#include "lmu/cli.hpp"

namespace lmu {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kData = LMU_TEST_DATA;
const std::string kTwoState = kData + "/two_state.pnts";
const std::string kHalfChance = kData + "/half_chance.pnts";

TEST(Cli, CheckLmuAtState) {
  Outcome r = run({"check", "--model", kTwoState, "--lmu", "<>P", "--state", "s0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "s0 = 1/2\n");
}

TEST(Cli, CheckAllStates) {
  Outcome r = run({"check", "--model", kTwoState, "--lmu", "mu X. (P \\/ <>X)"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "s0 = 1\ns1 = 1\n");
}

TEST(Cli, EvalNestedTerm) {
  Outcome r = run({"eval", "--term", "mu x.(nu y.(y (.) (x (+) 1/2*1)) \\/ 1/2*1)"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1\n");
  Outcome p = run({"eval", "--term", "nu y.(y (.) (x (+) 1/2*1)) \\/ 1/2*1", "--point", "x=3/4", "--cle"});
  EXPECT_EQ(p.out, "1\n{ -x + 1 >= 0, x >= 0, 2*x - 1 >= 0 } |- 1\n");
}

TEST(Cli, PctlCrossCheck) {
  Outcome r = run({"check", "--model", kHalfChance, "--pctl", "Pmax>=1/2 [ P1 U P2 ]", "--cross-check"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("s0 = 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("cross-check: oracle agrees"), std::string::npos);
  Outcome l = run({"check", "--model", kTwoState, "--lmu", "nu X. (P /\\ []X)", "--cross-check"});
  EXPECT_EQ(l.code, 0) << l.err;
}

TEST(Cli, JsonSchema) {
  Outcome r = run({"check", "--model", kTwoState, "--lmu", "<>P", "--json", "--approx"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["formula"], "<>P");
  ASSERT_EQ(j["results"].size(), 2u);
  EXPECT_EQ(j["results"][0]["state"], "s0");
  EXPECT_EQ(j["results"][0]["num"], "1");
  EXPECT_EQ(j["results"][0]["den"], "2");
  EXPECT_EQ(j["results"][0]["approx"], "0.5000000000");
  EXPECT_TRUE(j["iterations"].is_number_integer());
}

TEST(Cli, EncodeTranslateOracle) {
  Outcome e = run({"encode", "--pctl", "E X P"});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out, "mu _T1. (_T1 (+) <>P)\n");
  Outcome t = run({"translate", "--model", kTwoState, "--lmu", "<>P", "--state", "s0"});
  EXPECT_EQ(t.out, "1/2*0*1 (+) 1/2*1*1\n");
  Outcome o = run({"oracle", "--model", kHalfChance, "--pctl", "Pmax>=1/2 [P1 U P2]", "--probabilities"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("s0"), std::string::npos);
  EXPECT_NE(o.out.find("1/2"), std::string::npos);
}

TEST(Cli, InputErrorsExitOne) {
  Outcome missing = run({"check", "--model", kData + "/absent.pnts", "--lmu", "P"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_EQ(missing.err.rfind("error: ", 0), 0u);
  Outcome syntax = run({"check", "--model", kTwoState, "--lmu", "P \\/"});
  EXPECT_EQ(syntax.code, 1);
  EXPECT_NE(syntax.err.find("1:"), std::string::npos);
  EXPECT_EQ(run({"check", "--model", kTwoState, "--lmu", "P", "--pctl", "P"}).code, 1);
  EXPECT_EQ(run({"check", "--model", kTwoState}).code, 1);
  EXPECT_EQ(run({"check", "--model", kTwoState, "--lmu", "P", "--state", "nowhere"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"eval", "--term", "x", "--point", "x=2"}).code, 1);
  EXPECT_EQ(run({"eval", "--term", "x", "--point", "x"}).code, 1);
  EXPECT_EQ(run({"check", "--model", kTwoState, "--lmu", "R"}).code, 1);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"check", "--model", kHalfChance, "--pctl", "Pmin>0 [X !P1] | E[P1 U P2]",
                                "--show-cle", "--provenance", "--approx"};
  Outcome a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

}  // namespace
}  // namespace lmu
