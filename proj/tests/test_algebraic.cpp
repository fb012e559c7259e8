#include <gtest/gtest.h>

#include "support.hpp"
#include "tdecomp/algebraic.hpp"

using namespace tdtest;

namespace {
VarOrder ord1() { return VarOrder::algebraic({"x"}); }
VarOrder ord2() { return VarOrder::algebraic({"x", "y"}); }
VarOrder ord3() { return VarOrder::algebraic({"x", "y", "z"}); }
} // namespace

TEST(Algebraic, ChainXyz) {
  auto chains = decompose({P("x*y*z + 1"), P("x^2 + x")}, ord3());
  ASSERT_EQ(chains.size(), 1u);
  EXPECT_EQ(chains[0].polys, (std::vector<Poly>{P("x + 1"), P("x*y*z + 1")}));
  EXPECT_TRUE(divides(P("x*y"), chains[0].ineq_product));
  EXPECT_EQ(chains[0].params, std::vector<Var>{2});
}

TEST(Algebraic, AlreadyTriangular) {
  auto chains = decompose({P("x - 1")}, ord1());
  ASSERT_EQ(chains.size(), 1u);
  EXPECT_EQ(chains[0].polys, std::vector<Poly>{P("x - 1")});
  EXPECT_EQ(chains[0].ineq_product, Poly(1));
}

TEST(Algebraic, Inconsistent) {
  auto chains = decompose({P("x*y + 1"), P("x")}, ord2());
  EXPECT_TRUE(chains.empty());
}

TEST(Algebraic, Errors) {
  EXPECT_THROW(decompose({P("3")}, ord1()), Inconsistent);
  EXPECT_THROW(decompose(std::vector<Poly>{}, ord1()), EmptySystem);
  DecomposeOptions o;
  o.max_branches = 1;
  EXPECT_THROW(decompose({P("x*y*z + 1"), P("x^2 + x")}, ord3(), o), BranchLimitExceeded);
}

TEST(Algebraic, TwoLines) {
  auto chains = decompose({P("x^2 - 1"), P("y - x")}, ord2());
  ASSERT_FALSE(chains.empty());
  for (const auto& c : chains) {
    ASSERT_EQ(c.polys.size(), 2u);
    EXPECT_TRUE(chain_regularity_certificate(c).pass);
  }
}

TEST(Algebraic, RegularityCertificate) {
  auto ok = chain_regularity_certificate(std::vector<Poly>{P("x + 1"), P("x*y*z + 1")});
  EXPECT_TRUE(ok.pass);
  EXPECT_EQ(ok.witnesses.back(), P("y"));
  EXPECT_FALSE(chain_regularity_certificate(std::vector<Poly>{P("x"), P("x*y - 1")}).pass);
  EXPECT_TRUE(chain_regularity_certificate(std::vector<Poly>{P("y - x")}).pass);
}

TEST(Algebraic, TraceMonotone) {
  std::map<std::size_t, Var> eliminated;
  std::vector<TraceNode> nodes;
  DecomposeOptions o;
  o.trace = [&](const TraceNode& n) { nodes.push_back(n); };
  decompose({P("x*y*z + 1"), P("x^2 + x"), P("y^2 - z")}, ord3(), o);
  for (const auto& n : nodes)
    if (n.eliminated) eliminated[n.id] = *n.eliminated;
  int checked = 0;
  for (const auto& n : nodes) {
    if (!n.eliminated || !eliminated.count(n.parent)) continue;
    EXPECT_LT(*n.eliminated, eliminated[n.parent]);
    ++checked;
  }
  EXPECT_GT(checked, 0);
}
