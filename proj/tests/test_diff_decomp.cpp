#include <gtest/gtest.h>

#include "support.hpp"
#include "tdecomp/verify.hpp"

using namespace tdtest;

namespace {

const VarOrder& xy() {
  static const VarOrder ord = VarOrder::differential({"x", "y"});
  return ord;
}

Poly D(const std::string& s) { return parse_poly(s, xy()); }

std::vector<std::vector<Poly>> chain_polys(const std::vector<DiffChain>& cs) {
  std::vector<std::vector<Poly>> out;
  for (const auto& c : cs) out.push_back(c.polys);
  std::sort(out.begin(), out.end());
  return out;
}

DiffChain dchain(std::vector<Poly> polys, Poly ineq = Poly(1)) {
  DiffChain c;
  c.polys = std::move(polys);
  c.ineq_product = std::move(ineq);
  return c;
}

} // namespace

TEST(DDecompose, ProductOfClasses) {
  auto cs = ddecompose({D("x*y^2")}, xy());
  EXPECT_EQ(chain_polys(cs), (std::vector<std::vector<Poly>>{{D("x")}, {D("y")}}));
}

TEST(DDecompose, SingularSolutions) {
  auto cs = ddecompose({D("y'^2 - x*y^2")}, xy());
  std::vector<std::vector<Poly>> want{{D("x"), D("y'")}, {D("y")}, {D("y'^2 - x*y^2")}};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(chain_polys(cs), want);
  for (const auto& c : cs) {
    EXPECT_TRUE(dchain_saturation_certificate(c).pass);
    if (c.polys.size() == 1 && c.polys[0] == D("y'^2 - x*y^2")) EXPECT_TRUE(divides(D("y"), c.ineq_product));
  }
  auto rep = check_ddecomposition({D("y'^2 - x*y^2")}, cs, 2);
  EXPECT_EQ(rep.forward, 1.0);
  EXPECT_GT(rep.forward_points, 0u);
  EXPECT_LE(rep.residual_max, 1e-6);
}

TEST(DDecompose, SaturatedInputIsItsOwnChain) {
  auto cs = ddecompose({D("y' - 1")}, xy());
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].polys, std::vector<Poly>{D("y' - 1")});
  EXPECT_EQ(cs[0].ineq_product, Poly(1));
  EXPECT_EQ(cs[0].params, std::vector<unsigned>{1});
}

TEST(DDecompose, Errors) {
  EXPECT_THROW(ddecompose({Poly(3), D("y")}, xy()), Inconsistent);
  EXPECT_THROW(ddecompose({}, xy()), EmptySystem);
  DiffDecomposeOptions opt;
  opt.max_branches = 2;
  EXPECT_THROW(ddecompose({D("y'^2 - x*y^2")}, xy(), opt), BranchLimitExceeded);
}

TEST(DDecompose, TwoEquationsWithDerivatives) {
  // y' = y and y^2 = x: x' = 2 y y' = 2 x on the solutions.
  std::vector<Poly> H{D("y' - y"), D("y^2 - x")};
  auto cs = ddecompose(H, xy());
  ASSERT_FALSE(cs.empty());
  for (const auto& c : cs) {
    EXPECT_TRUE(dchain_saturation_certificate(c).pass);
    for (const auto& h : H) EXPECT_TRUE(dsat_membership(h, c.polys));
  }
  auto rep = check_ddecomposition(H, cs, 2);
  EXPECT_EQ(rep.forward, 1.0);
}

TEST(DDecompose, ChainsAreTriangularWithinOrderBound) {
  std::mt19937_64 rng(17);
  std::vector<Var> vars{diff_var(1, 0), diff_var(1, 1), diff_var(2, 0), diff_var(2, 1)};
  for (int i = 0; i < 10; ++i) {
    std::vector<Poly> H{random_poly(rng, vars, 2, 3, 3)};
    if (H[0].is_constant()) continue;
    auto cs = ddecompose(H, xy());
    unsigned bound = differential_order_bound(H, 2);
    for (const auto& c : cs) {
      std::vector<unsigned> classes;
      for (const auto& p : c.polys) {
        classes.push_back(diff_class(p));
        EXPECT_LE(max_order(p), bound);
      }
      std::sort(classes.begin(), classes.end());
      EXPECT_EQ(std::adjacent_find(classes.begin(), classes.end()), classes.end());
    }
  }
}

TEST(SaturationCertificate, Examples) {
  auto a = dchain_saturation_certificate(std::vector<Poly>{D("y'^2 - x*y^2")});
  EXPECT_TRUE(a.pass);
  ASSERT_EQ(a.witnesses.size(), 2u);
  EXPECT_EQ(canonical(a.witnesses[1]), D("x*y^2"));
  EXPECT_TRUE(dchain_saturation_certificate(std::vector<Poly>{D("y")}).pass);
  EXPECT_FALSE(dchain_saturation_certificate(std::vector<Poly>{D("y^2")}).pass);
}

TEST(DSample, JetsSolveTheChain) {
  auto pts = sample_dchain_points(dchain({D("y' - y")}), 3, 5, 0);
  for (const auto& p : pts)
    for (unsigned k = 0; k < 3; ++k)
      EXPECT_NEAR(std::abs(p.at(diff_var(2, k + 1)) - p.at(diff_var(2, k))), 0.0, 1e-9);
  EXPECT_THROW(sample_dchain_points(dchain({D("y")}, D("y")), 1, 3, 0), NoPointsFound);
}

TEST(DCheck, WrongChainFailsForward) {
  DiffChain c = dchain({D("y' - 1")});
  c.params = {1};
  auto rep = check_ddecomposition({D("y'^2 - x*y^2")}, {c}, 2);
  EXPECT_LT(rep.forward, 1.0);
}

TEST(DCheck, OrderZeroBackward) {
  auto cs = ddecompose({D("x*y^2")}, xy());
  auto rep = check_ddecomposition({D("x*y^2")}, cs, 2);
  EXPECT_EQ(rep.forward, 1.0);
  EXPECT_EQ(rep.backward, 1.0);
  EXPECT_FALSE(rep.backward_skipped);
  auto broken = check_ddecomposition({D("x*y^2")}, {cs[0]}, 2);
  EXPECT_LT(broken.backward, 1.0);
}
