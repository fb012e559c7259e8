#include <gtest/gtest.h>

#include "support.hpp"
#include "tdecomp/cli.hpp"

using namespace tdtest;

namespace {

Job opts(JobMode mode, OutputFormat fmt = OutputFormat::text) {
  Job j;
  j.mode = mode;
  j.format = fmt;
  return j;
}

nlohmann::json run_json(std::string_view text, JobMode mode, bool verify = false) {
  Job j = opts(mode, OutputFormat::json);
  j.verify = verify;
  return nlohmann::json::parse(run_file(text, j).output);
}

} // namespace

TEST(ReadJob, OrderCommentsAndSystem) {
  auto j = read_job("# header\n\norder: x < y<z\nx*y*z + 1   # trailing\n  x^2 + x\n", JobMode::algebraic);
  EXPECT_EQ(j.order, (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(j.system, (std::vector<std::string>{"x*y*z + 1", "x^2 + x"}));
}

TEST(ReadJob, Errors) {
  EXPECT_THROW(read_job("", JobMode::algebraic), ParseError);
  EXPECT_THROW(read_job("# only a comment\n", JobMode::algebraic), ParseError);
  EXPECT_THROW(read_job("order: x < y\n", JobMode::algebraic), ParseError);
  EXPECT_THROW(read_job("x + 1\n", JobMode::algebraic), ParseError);
  EXPECT_THROW(read_job("order: x < 2y\nx\n", JobMode::algebraic), ParseError);
  EXPECT_THROW(read_job("order: x < x\nx\n", JobMode::algebraic), ParseError);
  EXPECT_THROW(read_job("order: x < y\nx + w\n", JobMode::algebraic), ParseError);
  EXPECT_THROW(read_job("order: x < y\ny' - x\n", JobMode::algebraic), ParseError);
  EXPECT_NO_THROW(read_job("order: x < y\ny' - x\n", JobMode::differential));
}

TEST(ReadJob, PositionsAreFileOffsets) {
  try {
    read_job("order: x < y\nx y\n", JobMode::algebraic);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position, 15u);
  }
}

TEST(Run, ChainXyzText) {
  Job j = opts(JobMode::algebraic);
  j.verify = true;
  auto r = run_file("order: x < y < z\nx*y*z + 1\nx^2 + x\n", j);
  EXPECT_EQ(r.exit_code, exit_code::ok);
  EXPECT_NE(r.output.find("components: 1\n[x + 1, x*y*z + 1] / x*y\n"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find(": PASS\n"), std::string::npos);
}

TEST(Run, JsonDocument) {
  auto doc = run_json("order: x < y\nx*y^2\n", JobMode::differential, true);
  EXPECT_EQ(doc["schema"], 1);
  EXPECT_EQ(doc["mode"], "differential");
  ASSERT_EQ(doc["components"].size(), 2u);
  EXPECT_EQ(doc["components"][0]["chain"], nlohmann::json::array({"x"}));
  EXPECT_EQ(doc["components"][1]["chain"], nlohmann::json::array({"y"}));
  EXPECT_EQ(doc["components"][1]["ineq_product"], "x");
  for (const char* key : {"forward", "backward", "residual_max", "seed", "forward_points", "backward_points",
                          "empty_chains", "backward_skipped", "certificates", "pass"})
    EXPECT_TRUE(doc["verify"].contains(key)) << key;
  EXPECT_EQ(doc["verify"]["pass"], true);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(run_file("", opts(JobMode::algebraic)).exit_code, exit_code::parse_error);
  EXPECT_EQ(run_file("order: x\n0\n", opts(JobMode::algebraic)).exit_code, exit_code::parse_error);
  EXPECT_EQ(run_file("order: x < y\n3\nx\n", opts(JobMode::algebraic)).exit_code, exit_code::inconsistent);
  Job capped = opts(JobMode::differential);
  capped.max_branches = 2;
  EXPECT_EQ(run_file("order: x < y\ny'^2 - x*y^2\n", capped).exit_code, exit_code::branch_limit);
  auto doc = nlohmann::json::parse(run_file("order: x < y\nx y\n", opts(JobMode::algebraic, OutputFormat::json)).output);
  EXPECT_EQ(doc["error"]["kind"], "ParseError");
  EXPECT_EQ(doc["error"]["position"], 15);
}

TEST(Run, InconsistentSystemHasNoComponents) {
  auto doc = run_json("order: x < y\nx*y + 1\nx\n", JobMode::algebraic);
  EXPECT_TRUE(doc["components"].empty());
}

TEST(Run, Deterministic) {
  Job j = opts(JobMode::differential, OutputFormat::json);
  j.verify = true;
  j.trace = true;
  j.seed = 7;
  const std::string text = "order: x < y\ny'^2 - x*y^2\n";
  EXPECT_EQ(run_file(text, j).output, run_file(text, j).output);
}

TEST(Run, TraceTree) {
  Job j = opts(JobMode::algebraic, OutputFormat::json);
  j.trace = true;
  auto doc = nlohmann::json::parse(run_file("order: x < y < z\nx*y*z + 1\nx^2 + x\n", j).output);
  ASSERT_FALSE(doc["trace"].empty());
  EXPECT_EQ(doc["trace"][0]["id"], 1);
  EXPECT_EQ(doc["trace"][0]["parent"], 0);
  EXPECT_EQ(doc["trace"][0]["eliminated"], "z");
  for (const auto& n : doc["trace"]) EXPECT_LT(n["parent"].get<int>(), n["id"].get<int>());
}

TEST(Run, OutputRoundTrips) {
  std::mt19937_64 rng(3);
  const VarOrder ord = VarOrder::algebraic({"x", "y", "z"});
  for (int t = 0; t < 10; ++t) {
    std::string text = "order: x < y < z\n";
    for (int i = 0; i < 2; ++i) {
      Poly p;
      while (p.is_constant()) p = random_poly(rng, {1, 2, 3}, 2, 5, 3);
      text += to_string(p, ord) + "\n";
    }
    auto doc = run_json(text, JobMode::algebraic);
    for (const auto& c : doc["components"]) {
      for (const auto& s : c["chain"]) EXPECT_EQ(to_string(parse_poly(s.get<std::string>(), ord), ord), s);
      EXPECT_EQ(to_string(parse_poly(c["ineq_product"].get<std::string>(), ord), ord), c["ineq_product"]);
    }
  }
}
