#include <gtest/gtest.h>

#include "support.hpp"
#include "tdecomp/diff.hpp"

using namespace tdtest;

namespace {

const VarOrder& xy() {
  static const VarOrder ord = VarOrder::differential({"x", "y"});
  return ord;
}

Poly D(const std::string& s) { return parse_poly(s, xy()); }

std::vector<Poly> canon(std::vector<Poly> ps) {
  for (auto& p : ps) p = canonical(p);
  std::sort(ps.begin(), ps.end());
  return ps;
}

const unsigned X = 1, Yc = 2; // classes

std::vector<Var> jet_vars() {
  return {diff_var(X, 0), diff_var(X, 1), diff_var(Yc, 0), diff_var(Yc, 1)};
}

} // namespace

TEST(Differentiate, Examples) {
  EXPECT_EQ(differentiate(D("y")), D("y'"));
  EXPECT_EQ(differentiate(D("y'^2 - x*y^2")), D("2*y'*y'' - x'*y^2 - 2*x*y*y'"));
  EXPECT_TRUE(differentiate(Poly(7)).is_zero());
  EXPECT_EQ(differentiate(D("y"), 3), D("y^(3)"));
}

TEST(Differentiate, IsADerivation) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    Poly f = random_poly(rng, jet_vars(), 3, 5, 4);
    Poly g = random_poly(rng, jet_vars(), 3, 5, 4);
    EXPECT_EQ(differentiate(f * g), f * differentiate(g) + g * differentiate(f));
    EXPECT_EQ(differentiate(f + g), differentiate(f) + differentiate(g));
  }
}

TEST(Leaders, ClassOrderAndRanking) {
  Poly f = D("x'^3*y + y'' - x");
  EXPECT_EQ(leader(f), diff_var(Yc, 2));
  EXPECT_EQ(diff_class(f), Yc);
  EXPECT_EQ(order_in(f, X), 1u);
  EXPECT_EQ(order_in(D("x"), Yc), std::nullopt);
  EXPECT_EQ(max_order(f), 2u);
  // y > x^(5): class dominates order.
  EXPECT_GT(diff_var(Yc, 0), diff_var(X, 5));
}

TEST(Separant, Examples) {
  EXPECT_EQ(separant(D("y'^2 - x*y^2")), D("2*y'"));
  EXPECT_EQ(separant(D("x*y^2")), D("2*x*y"));
  EXPECT_EQ(separant(D("y' - y")), Poly(1));
  EXPECT_THROW(separant(Poly(3)), ConstantPolynomial);
}

TEST(Dpm, Examples) {
  auto a = dpm(D("y' - y"), {D("y'' + y")}, Poly(1));
  ASSERT_EQ(a.eqs.size(), 2u);
  EXPECT_EQ(a.eqs[1], D("y' + y"));
  EXPECT_EQ(a.ineq, Poly(1));

  auto b = dpm(D("y'"), {D("y''")}, Poly(1));
  EXPECT_EQ(b.eqs, std::vector<Poly>{D("y'")});

  // Singular branch of x*y^2 with 2*x*y as pivot.
  auto c = dpm(D("2*x*y"), {D("y'"), D("x*y^2")}, D("2*x"));
  EXPECT_EQ(canon(c.eqs), canon({D("2*x*y"), D("2*x'*y"), D("x*y^2")}));
  EXPECT_EQ(c.ineq, D("4*x^2"));

  // General branch of x*y^2.
  auto d = dpm(D("x*y^2"), {D("y'")}, Poly(1));
  EXPECT_EQ(canon(d.eqs), canon({D("x*y^2"), D("x'*y^2")}));
  EXPECT_EQ(d.ineq, D("2*x*y"));
}

TEST(Dpm, Preconditions) {
  EXPECT_THROW(dpm(Poly(2), {D("y")}, Poly(1)), BadLeader);
  EXPECT_THROW(dpm(D("x'"), {D("y")}, Poly(1), Yc), BadLeader);
}

TEST(Dpm, OrdersDropToTheLeader) {
  std::mt19937_64 rng(9);
  std::vector<Var> vars{diff_var(X, 0), diff_var(X, 1), diff_var(Yc, 0), diff_var(Yc, 1), diff_var(Yc, 2),
                        diff_var(Yc, 3)};
  for (int i = 0; i < 30; ++i) {
    Poly g0 = random_poly(rng, {diff_var(X, 0), diff_var(Yc, 0)}, 2, 4, 3) * Poly::var(diff_var(Yc, 1)) +
              random_poly(rng, {diff_var(X, 0), diff_var(Yc, 0)}, 2, 4, 3);
    if (g0.degree(diff_var(Yc, 1)) == 0) continue;
    std::vector<Poly> fs{random_poly(rng, vars, 3, 4, 4), random_poly(rng, vars, 2, 4, 3)};
    auto r = dpm(g0, fs, random_poly(rng, vars, 2, 3, 2));
    for (const auto& p : r.eqs) EXPECT_LE(order_in(p, Yc).value_or(0), 1u);
    EXPECT_LE(order_in(r.ineq, Yc).value_or(0), 1u);
  }
}

TEST(Dpm, KillsMembersOfTheDifferentialIdeal) {
  // f in [g0] reduces to a multiple of g0 (zero pseudo-remainder).
  std::mt19937_64 rng(13);
  Var y1 = diff_var(Yc, 1);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    Poly g0 = Poly::var(y1) * random_poly(rng, {diff_var(X, 0)}, 1, 3, 2) +
              random_poly(rng, {diff_var(X, 0), diff_var(Yc, 0)}, 2, 4, 3);
    if (g0.degree(y1) == 0 || !initial(g0).is_constant()) continue;
    Poly f = random_poly(rng, jet_vars(), 2, 3, 2) * differentiate(g0, 2) +
             random_poly(rng, jet_vars(), 2, 3, 2) * differentiate(g0) + random_poly(rng, jet_vars(), 1, 3, 2) * g0;
    auto r = dpm(g0, {f}, Poly(1));
    Poly rem = r.eqs.size() > 1 ? pseudo_remainder(r.eqs[1], g0, y1) : Poly();
    EXPECT_TRUE(rem.is_zero());
    ++checked;
  }
  EXPECT_GE(checked, 5);
}

TEST(Split, Product) {
  auto comps = split({D("x*y^2")}, Yc);
  ASSERT_EQ(comps.size(), 3u);
  EXPECT_EQ(canon(comps[0].eqs), canon({D("x*y^2")}));
  EXPECT_EQ(*comps[0].ineq, D("2*x*y"));
  EXPECT_EQ(*comps[0].pivot, D("x*y^2"));
  EXPECT_EQ(canon(comps[1].eqs), canon({D("x*y^2"), D("2*x*y")}));
  EXPECT_EQ(*comps[1].ineq, D("2*x"));
  EXPECT_EQ(*comps[1].pivot, D("2*x*y"));
  EXPECT_EQ(canon(comps[2].eqs), canon({D("2*x")}));
  EXPECT_FALSE(comps[2].ineq.has_value());
}

TEST(Split, LinearAndAbsent) {
  auto a = split({D("y - 1")}, Yc);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(*a[0].ineq, Poly(1));
  auto b = split({D("x")}, Yc);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].eqs, std::vector<Poly>{D("x")});
  EXPECT_FALSE(b[0].ineq.has_value());
}

TEST(Split, CoversTheZeroSet) {
  std::mt19937_64 rng(21);
  const auto vars = jet_vars();
  std::uniform_int_distribution<int> val(-1, 1);
  for (int inst = 0; inst < 20; ++inst) {
    std::vector<Poly> G{random_poly(rng, vars, 3, 2, 3), random_poly(rng, vars, 2, 2, 3)};
    auto comps = split(G, Yc);
    for (int k = 0; k < 100; ++k) {
      std::map<Var, Rational> at;
      for (Var v : vars) at[v] = val(rng);
      auto vanishes = [&](const Poly& p) { return evaluate(p, at).is_zero(); };
      bool in_g = std::all_of(G.begin(), G.end(), vanishes);
      bool in_comp = false;
      for (const auto& c : comps) {
        bool ok = std::all_of(c.eqs.begin(), c.eqs.end(), vanishes);
        if (c.ineq) ok = ok && !vanishes(*c.ineq);
        in_comp = in_comp || ok;
      }
      EXPECT_EQ(in_g, in_comp);
    }
  }
}

TEST(PartialReduce, EliminatesProperDerivatives) {
  std::vector<Poly> chain{D("x' - x"), D("y'^2 - x*y")};
  Poly r = partial_reduce(D("y''' + x''"), chain);
  EXPECT_LE(order_in(r, Yc).value_or(0), 1u);
  EXPECT_LE(order_in(r, X).value_or(0), 1u);
  EXPECT_TRUE(partial_reduce(differentiate(D("x' - x"), 2), chain).is_zero());
}

TEST(DiffChain, InitialsAndSeparants) {
  DiffChain c;
  c.polys = {D("x'^2 - x"), D("x*y'^2 - y")};
  EXPECT_EQ(c.initials(), (std::vector<Poly>{Poly(1), D("x")}));
  EXPECT_EQ(c.separants(), (std::vector<Poly>{D("2*x'"), D("2*x*y'")}));
}
