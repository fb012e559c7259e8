#pragma once
// Macaulay matrices in the homogeneous variables (Y, Y0, Y1) and a
// fraction-free elimination that splits the parameter space into cases,
// each with a nonsingular maximal minor.

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "tdecomp/conditions.hpp"
#include "tdecomp/errors.hpp"
#include "tdecomp/poly.hpp"

namespace tdecomp {

using PolyMatrix = std::vector<std::vector<Poly>>;

inline Poly bareiss_determinant(PolyMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly(1);
  for (const auto& row : m)
    if (row.size() != n) throw Error("bareiss_determinant: matrix is not square");
  Poly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t s = k + 1;
      while (s < n && m[s][k].is_zero()) ++s;
      if (s == n) return Poly();
      std::swap(m[k], m[s]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = divide_exact(t, prev);
        if (!q) throw Error("bareiss_determinant: inexact division");
        m[i][j] = std::move(*q);
      }
      m[i][k] = Poly();
    }
    prev = m[k][k];
  }
  return negate ? -prev : prev;
}

// Sylvester resultant of a and b with respect to v.
inline Poly resultant(const Poly& a, const Poly& b, Var v) {
  if (a.is_zero() || b.is_zero()) return Poly();
  unsigned m = a.degree(v), n = b.degree(v);
  if (m == 0) return a.pow(n);
  if (n == 0) return b.pow(m);
  auto ca = a.coeffs(v), cb = b.coeffs(v);
  const std::size_t size = m + n;
  PolyMatrix s(size, std::vector<Poly>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j <= m; ++j) s[r][r + j] = ca[m - j];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= n; ++j) s[n + r][r + j] = cb[n - j];
  return bareiss_determinant(std::move(s));
}

// Generators homogeneous in (Y, Y0, Y1); the last one is the linear form
// Y*U + Y0*U0 + Y1*U1.
struct HomogSystem {
  Var y = 0;
  std::vector<Poly> gens;
  std::vector<unsigned> gammas;
};

inline Poly linear_form(Var y) {
  return Poly::var(y) * Poly::var(kU) + Poly::var(kY0) * Poly::var(kU0) + Poly::var(kY1) * Poly::var(kU1);
}

inline unsigned macaulay_degree(const std::vector<unsigned>& gammas) {
  if (gammas.empty()) throw EmptySystem();
  std::size_t top = gammas.size() >= 2 ? std::min<std::size_t>(2, gammas.size() - 2) : 0;
  unsigned d = gammas[0];
  for (std::size_t l = 1; l <= top; ++l) d += gammas[l] - 1;
  return d;
}

using HomExp = std::array<unsigned, 3>; // exponents of (Y, Y0, Y1)

// Monomials of total degree d in (Y, Y0, Y1), lex descending.
inline std::vector<HomExp> homogeneous_basis(unsigned d) {
  std::vector<HomExp> out;
  for (unsigned a = d + 1; a-- > 0;)
    for (unsigned b = d - a + 1; b-- > 0;) out.push_back({a, b, d - a - b});
  return out;
}

inline std::size_t basis_size(unsigned d) { return std::size_t(d + 2) * (d + 1) / 2; }

// Position of (a, b, c) in homogeneous_basis(a + b + c).
inline std::size_t basis_index(const HomExp& e) {
  unsigned d = e[0] + e[1] + e[2];
  std::size_t before = 0;
  for (unsigned a = d; a > e[0]; --a) before += d - a + 1;
  return before + (d - e[0] - e[1]);
}

// Splits a polynomial homogeneous in (Y, Y0, Y1) into its coefficients.
inline std::vector<std::pair<HomExp, Poly>> homogeneous_parts(const Poly& p, Var y) {
  std::map<HomExp, std::vector<Term>> groups;
  for (const auto& t : p.terms()) {
    auto [a, r1] = t.mono.extract(y);
    auto [b, r2] = r1.extract(kY0);
    auto [c, rest] = r2.extract(kY1);
    groups[{a, b, c}].push_back({rest, t.coef});
  }
  std::vector<std::pair<HomExp, Poly>> out;
  for (auto& [e, ts] : groups) out.emplace_back(e, Poly::from_terms(std::move(ts)));
  return out;
}

struct MacaulayMatrix {
  unsigned degree = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t num_split = 0; // columns [0, num_split) do not involve U, U0, U1
  PolyMatrix entries;        // entries[row][col]
};

inline MacaulayMatrix build_macaulay(const HomogSystem& sys, unsigned degree) {
  MacaulayMatrix a;
  a.degree = degree;
  a.rows = basis_size(degree);
  for (std::size_t g = 0; g < sys.gens.size(); ++g) {
    if (sys.gammas[g] > degree) continue;
    a.cols += basis_size(degree - sys.gammas[g]);
    if (g + 1 < sys.gens.size()) a.num_split = a.cols;
  }
  a.entries.assign(a.rows, std::vector<Poly>(a.cols));
  std::size_t col = 0;
  for (std::size_t g = 0; g < sys.gens.size(); ++g) {
    if (sys.gammas[g] > degree) continue;
    auto parts = homogeneous_parts(sys.gens[g], sys.y);
    for (const auto& mult : homogeneous_basis(degree - sys.gammas[g])) {
      for (const auto& [e, c] : parts) {
        HomExp row{e[0] + mult[0], e[1] + mult[1], e[2] + mult[2]};
        a.entries[basis_index(row)][col] += c;
      }
      ++col;
    }
  }
  return a;
}

inline MacaulayMatrix build_macaulay(const HomogSystem& sys) { return build_macaulay(sys, macaulay_degree(sys.gammas)); }

// Coefficients of p viewed as a polynomial in U, U0, U1, lex descending by
// U-monomial.
inline std::vector<std::pair<Monomial, Poly>> u_coefficients(const Poly& p) {
  std::map<Monomial, std::vector<Term>, std::greater<>> groups;
  for (const auto& t : p.terms()) {
    std::vector<Monomial::Factor> u, rest;
    for (const auto& f : t.mono.factors()) (f.first == kU || f.first == kU0 || f.first == kU1 ? u : rest).push_back(f);
    groups[Monomial(u)].push_back({Monomial(rest), t.coef});
  }
  std::vector<std::pair<Monomial, Poly>> out;
  for (auto& [m, ts] : groups) out.emplace_back(m, Poly::from_terms(std::move(ts)));
  return out;
}

struct Branch {
  Conditions cond;
  std::optional<Poly> delta; // absent when no nonsingular maximal minor exists
  std::vector<std::size_t> columns; // columns of the minor, ascending
  std::size_t num_rank = 0;
  std::size_t e_index = 0; // l: E^(0) .. E^(l-1) vanish on the branch
  Poly e_lead;             // E^(l), coefficient of U0^(D2-l) in delta
  Poly e_coef;             // coefficient of U1^m in E^(l); lies in K[x]
  unsigned u1_power = 0;   // m

  const std::vector<Poly>& eqs() const { return cond.eqs(); }
  Poly ineq() const { return cond.ineq_product(); }
};

struct CaseSplitOptions {
  std::size_t max_branches = 100000;
};

namespace detail {

struct ElimState {
  PolyMatrix m;
  std::vector<char> used;
  std::vector<std::size_t> columns;
  std::size_t col = 0;
  std::size_t pivots = 0;
  std::size_t num_rank = 0;
  Poly prev = Poly(1);
  Conditions cond;
  std::optional<std::pair<std::size_t, std::size_t>> forced; // (row, col) chosen by a branch
};

inline bool add_all_zero(Conditions& c, const std::vector<std::pair<Monomial, Poly>>& parts) {
  for (const auto& [u, p] : parts)
    if (!c.add_eq(p)) return false;
  return true;
}

inline bool entry_certainly_zero(const Conditions& c, const Poly& e) {
  if (e.is_zero()) return true;
  for (const auto& [u, p] : u_coefficients(e))
    if (!c.certainly_zero(p)) return false;
  return true;
}

inline int entry_strength(const Conditions& c, const Poly& e) {
  auto parts = u_coefficients(e);
  for (const auto& [u, p] : parts)
    if (is_nonzero_constant(p)) return 2;
  for (const auto& [u, p] : parts)
    if (c.certainly_nonzero(p)) return 1;
  return 0;
}

inline void eliminate(ElimState& s, std::size_t p, std::size_t c) {
  const std::size_t ncols = s.m.empty() ? 0 : s.m[0].size();
  const Poly piv = s.m[p][c];
  for (std::size_t i = 0; i < s.m.size(); ++i) {
    if (s.used[i] || i == p) continue;
    const Poly lead = s.m[i][c];
    for (std::size_t j = c + 1; j < ncols; ++j) {
      if (lead.is_zero() && s.m[i][j].is_zero()) continue;
      Poly t = piv * s.m[i][j];
      if (!lead.is_zero() && !s.m[p][j].is_zero()) t -= lead * s.m[p][j];
      if (is_nonzero_constant(s.prev)) {
        s.m[i][j] = t.scaled(1 / s.prev.constant_value());
      } else {
        auto q = divide_exact(t, s.prev);
        if (!q) throw Error("case split: inexact division");
        s.m[i][j] = std::move(*q);
      }
    }
    s.m[i][c] = Poly();
  }
  s.used[p] = 1;
  s.columns.push_back(c);
  s.prev = piv;
  ++s.pivots;
}

// Appends the branches of the E^(l) cascade of delta under cond.
inline void e_cascade(const Conditions& cond, const Poly& delta, const std::vector<std::size_t>& columns,
                      std::size_t num_rank, std::vector<Branch>& out) {
  unsigned d2 = delta.degree(kU0);
  Conditions acc = cond;
  for (unsigned l = 0; l < d2; ++l) {
    Poly e = delta.coeff(kU0, d2 - l);
    if (!e.is_zero()) {
      unsigned m = e.lead().mono.degree(kU) + e.lead().mono.degree(kU1);
      Poly top = e.coeff(kU1, m);
      Conditions c = acc;
      if (!top.is_zero() && c.add_ineq(top)) {
        Branch b;
        b.cond = std::move(c);
        b.delta = delta;
        b.columns = columns;
        b.num_rank = num_rank;
        b.e_index = l;
        b.e_lead = e;
        b.e_coef = top;
        b.u1_power = m;
        out.push_back(std::move(b));
      }
      if (!add_all_zero(acc, u_coefficients(e))) return;
    }
  }
}

} // namespace detail

// Fraction-free elimination over the parameter space. Columns of A^(num) are
// searched first, left to right, then A^(for); rows top-down. A pivot whose
// sign is undetermined splits the computation: for candidate rows
// t1, t2, ... the branches are "t1 nonzero", "t1 zero, t2 nonzero", ... and
// "all zero". Entries involving U, U0, U1 are split through their
// U-monomial coefficients in the same way, so every condition lies in K[x].
//
// Each returned Branch with a delta is further refined by the E^(l) cascade:
// E^(0) = ... = E^(l-1) = 0 and [U1^m] E^(l) != 0.
inline std::vector<Branch> case_split_determinants(const MacaulayMatrix& a, const Conditions& initial,
                                                   const CaseSplitOptions& opt = {}) {
  std::vector<Branch> out;
  std::vector<detail::ElimState> stack;
  {
    detail::ElimState s;
    s.m = a.entries;
    s.used.assign(a.rows, 0);
    s.cond = initial;
    stack.push_back(std::move(s));
  }
  std::size_t explored = 0;
  const std::size_t r = a.rows;
  while (!stack.empty()) {
    detail::ElimState s = std::move(stack.back());
    stack.pop_back();
    if (++explored > opt.max_branches) throw BranchLimitExceeded(opt.max_branches);
    bool split = false;
    while (s.pivots < r && s.col < a.cols) {
      const std::size_t c = s.col;
      const bool num = c < a.num_split;
      if (s.forced) {
        auto [p, fc] = *s.forced;
        s.forced.reset();
        detail::eliminate(s, p, fc);
        if (num) ++s.num_rank;
        ++s.col;
        continue;
      }
      std::vector<std::size_t> cand;
      for (std::size_t i = 0; i < r; ++i)
        if (!s.used[i] && !detail::entry_certainly_zero(s.cond, s.m[i][c])) cand.push_back(i);
      if (cand.empty()) {
        ++s.col;
        continue;
      }
      std::optional<std::size_t> pick;
      for (int want = 2; want >= 1 && !pick; --want)
        for (auto i : cand)
          if (detail::entry_strength(s.cond, s.m[i][c]) >= want) {
            pick = i;
            break;
          }
      if (pick) {
        detail::eliminate(s, *pick, c);
        if (num) ++s.num_rank;
        ++s.col;
        continue;
      }
      // Undetermined: branch. Children are pushed in reverse so the first
      // candidate is explored first.
      std::vector<detail::ElimState> children;
      Conditions zero_so_far = s.cond;
      bool alive = true;
      for (auto t : cand) {
        auto parts = u_coefficients(s.m[t][c]);
        Conditions before = zero_so_far;
        for (const auto& [u, coef] : parts) {
          Conditions cc = before;
          if (cc.add_ineq(coef)) {
            detail::ElimState child;
            child.m = s.m;
            child.used = s.used;
            child.columns = s.columns;
            child.col = s.col;
            child.pivots = s.pivots;
            child.num_rank = s.num_rank;
            child.prev = s.prev;
            child.cond = std::move(cc);
            child.forced = std::make_pair(t, c);
            children.push_back(std::move(child));
          }
          if (!before.add_eq(coef)) {
            alive = false;
            break;
          }
        }
        if (!alive) break;
        zero_so_far = std::move(before);
      }
      if (alive) {
        s.cond = std::move(zero_so_far);
        ++s.col;
        children.push_back(std::move(s));
      }
      for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
      split = true;
      break;
    }
    if (split) continue;
    if (s.pivots < r) {
      Branch b;
      b.cond = std::move(s.cond);
      b.columns = std::move(s.columns);
      b.num_rank = s.num_rank;
      out.push_back(std::move(b));
      continue;
    }
    detail::e_cascade(s.cond, s.prev, s.columns, s.num_rank, out);
  }
  return out;
}

} // namespace tdecomp
