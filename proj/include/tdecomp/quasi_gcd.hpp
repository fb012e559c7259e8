#pragma once
// One-variable elimination: splits zero(h_1..h_k / h_0) into components
// zero(psi, eqs / ineq) with psi in K[x][Y] and eqs, ineq in K[x], plus the
// coefficient component where every h_i vanishes identically in Y.

#include <algorithm>
#include <optional>
#include <vector>

#include "tdecomp/linalg.hpp"

namespace tdecomp {

struct GcdComponent {
  std::optional<Poly> psi;
  std::vector<Poly> eqs;
  Poly ineq = Poly(1);

  friend bool operator==(const GcdComponent& a, const GcdComponent& b) {
    return a.psi == b.psi && a.eqs == b.eqs && a.ineq == b.ineq;
  }
};

struct QuasiGcdOptions {
  std::size_t max_branches = 100000;
  unsigned extra_degree = 3; // how far D may be raised when a branch is rank deficient
  // Pseudo-reduce the other inputs and h0 by an input whose initial cannot
  // vanish (a nonzero constant, or built from factors of h0) before
  // homogenizing, splitting first on the initials of linear inputs. Same
  // zero set, smaller matrices.
  bool reduce_by_unit_initial = true;
  // Above this Macaulay degree, case-split on the initial of the lowest
  // degree input (nonzero: it becomes a reducer; zero: drop the leading
  // term) instead of building the matrix.
  unsigned split_above_degree = 8;
};

// Y^beta Y0^(deg - beta) p_beta
inline Poly homogenize(const Poly& p, Var y, unsigned deg) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    unsigned b = t.mono.degree(y);
    out.push_back({t.mono * Monomial::var(kY0, deg - b), t.coef});
  }
  return Poly::from_terms(std::move(out));
}

// Each polynomial is homogenized with its own Y-degree; h0 becomes
// Y1*Y0^e*h0(Y/Y0) - Y0^(e+1) with e = deg_Y(h0). Generators are sorted by
// degree (stable), the linear form last.
inline HomogSystem homogenize_system(const std::vector<Poly>& polys, const Poly& h0, Var y) {
  std::vector<std::pair<unsigned, Poly>> g;
  for (const auto& p : polys) {
    unsigned d = p.degree(y);
    g.emplace_back(d, homogenize(p, y, d));
  }
  unsigned e = h0.degree(y);
  g.emplace_back(e + 1, Poly::var(kY1) * homogenize(h0, y, e) - Poly::var(kY0, e + 1));
  std::stable_sort(g.begin(), g.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  HomogSystem s;
  s.y = y;
  for (auto& [d, p] : g) {
    s.gens.push_back(std::move(p));
    s.gammas.push_back(d);
  }
  s.gens.push_back(linear_form(y));
  s.gammas.push_back(1);
  return s;
}

namespace detail {

inline void check_below(const Poly& p, Var y) {
  for (Var v : p.variables())
    if (v > y || is_aux(v)) throw MainVariableInCoefficients("variable id " + std::to_string(v));
}

inline void push_unique(std::vector<GcdComponent>& out, GcdComponent c) {
  if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
}

// Content factors of p shared with h0 are nonzero wherever h0 is.
inline Poly trim_known_factors(const Poly& p, const Poly& h0, Var y) {
  Poly q = p, c = content(p, y);
  while (!c.is_constant()) {
    Poly g = gcd(c, h0);
    if (g.is_constant()) break;
    q = *divide_exact(q, g);
    c = *divide_exact(c, g);
  }
  return canonical(q);
}

// Same nonvanishing locus with a squarefree content.
inline Poly trim_ineq(const Poly& h, Var y) {
  Poly c = content(h, y);
  if (c.is_constant()) return canonical(h);
  return canonical(squarefree_part(c) * *divide_exact(h, c));
}

inline std::optional<GcdComponent> component_from_branch(const Branch& b, Var y) {
  Poly psi = b.delta->coeff(kU1, b.u1_power);
  psi = psi.substitute(kU, Poly(-1)).substitute(kU0, Poly::var(y));
  if (psi.degree(y) == 0) return std::nullopt;
  psi = canonical(primitive_part(psi, y));
  GcdComponent c;
  c.eqs = b.eqs();
  c.ineq = b.ineq();
  Poly lead = canonical(initial(psi));
  if (!divides(lead, c.ineq)) {
    Poly g = gcd(lead, c.ineq);
    c.ineq = canonical(c.ineq * *divide_exact(lead, g));
  }
  c.ineq = canonical(squarefree_part(c.ineq));
  c.psi = std::move(psi);
  return c;
}

inline std::vector<GcdComponent> quasi_gcd_impl(const std::vector<Poly>& eqs, const Poly& h0, Var y, bool squarefree,
                                                const QuasiGcdOptions& opt);

// True only when no point satisfies eqs = 0 and ineq != 0. Eliminates the
// largest variable with quasi_gcd and recurses on each component; answers
// false whenever it cannot decide.
inline bool locus_empty(std::vector<Poly> eqs, const Poly& ineq, const QuasiGcdOptions& opt) {
  std::erase_if(eqs, [](const Poly& p) { return p.is_zero(); });
  if (ineq.is_zero()) return true;
  for (const auto& p : eqs)
    if (p.is_constant()) return true;
  if (eqs.empty()) return false;
  Var v = 0;
  for (const auto& p : eqs) v = std::max(v, p.main_var());
  if (!ineq.is_constant() && ineq.main_var() > v) return false;
  std::vector<Poly> top, rest;
  for (const auto& p : eqs) (p.main_var() == v ? top : rest).push_back(p);
  try {
    for (const auto& comp : quasi_gcd_impl(top, ineq, v, false, opt)) {
      std::vector<Poly> below = comp.eqs;
      below.insert(below.end(), rest.begin(), rest.end());
      if (!comp.psi && !comp.ineq.is_constant() && comp.ineq.main_var() >= v) return false;
      if (!locus_empty(std::move(below), comp.ineq, opt)) return false;
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

// Components for one subsystem on the locus `cond`.
inline void solve_subsystem(const std::vector<Poly>& polys, const Poly& h0, Var y, const Conditions& cond,
                            const QuasiGcdOptions& opt, std::vector<GcdComponent>& out) {
  HomogSystem sys = homogenize_system(polys, h0, y);
  unsigned d = macaulay_degree(sys.gammas);
  std::vector<std::pair<Conditions, unsigned>> work{{cond, d}};
  CaseSplitOptions co{opt.max_branches};
  while (!work.empty()) {
    auto [c, deg] = std::move(work.back());
    work.pop_back();
    auto a = build_macaulay(sys, deg);
    for (const auto& b : case_split_determinants(a, c, co)) {
      if (!b.delta) {
        // Empty loci are rank deficient at every degree.
        if (locus_empty(b.cond.eqs(), b.cond.ineq_product(), opt)) continue;
        if (deg >= d + opt.extra_degree) throw RankDeficient();
        work.emplace_back(b.cond, deg + 1);
        continue;
      }
      if (auto comp = component_from_branch(b, y)) push_unique(out, std::move(*comp));
    }
  }
}

inline void run_cascade(const std::vector<Poly>& hs, const Poly& h0, Var y, bool squarefree,
                        const std::vector<Poly>& known, const QuasiGcdOptions& opt, std::vector<GcdComponent>& out) {
  Conditions cond;
  for (const auto& p : known)
    if (!cond.add_eq(p)) return;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    auto cs = hs[i].coeffs(y);
    for (std::size_t j = cs.size() - 1; j >= 1; --j) {
      Conditions cij = cond;
      if (cij.add_ineq(cs[j])) {
        Poly htilde = Poly::from_coeffs(std::vector<Poly>(cs.begin(), cs.begin() + j + 1), y);
        std::vector<Poly> rest(hs.begin() + i + 1, hs.end());
        if (!squarefree) {
          std::vector<Poly> polys{htilde};
          polys.insert(polys.end(), rest.begin(), rest.end());
          solve_subsystem(polys, h0, y, cij, opt, out);
        } else {
          std::vector<Poly> polys{htilde};
          polys.insert(polys.end(), rest.begin(), rest.end());
          Poly deriv = htilde;
          for (std::size_t s = 1; s <= j; ++s) {
            deriv = deriv.derivative(y);
            Poly ineq = s == j ? h0 : h0 * deriv;
            solve_subsystem(polys, ineq, y, cij, opt, out);
            polys.push_back(deriv);
          }
        }
      }
      if (!cond.add_eq(cs[j])) return;
    }
    if (!cond.add_eq(cs[0])) return;
  }
}

inline std::vector<GcdComponent> quasi_gcd_impl(const std::vector<Poly>& eqs, const Poly& h0, Var y, bool squarefree,
                                                const QuasiGcdOptions& opt) {
  for (const auto& p : eqs) check_below(p, y);
  check_below(h0, y);

  std::vector<Poly> hs, fixed;
  for (const auto& p : eqs) {
    if (p.is_zero()) continue;
    (p.degree(y) > 0 ? hs : fixed).push_back(p);
  }
  Poly h0r = h0;
  // The Y-free equations are only used to simplify when the matrix would be
  // expensive; a single small input goes to the matrix as it is.
  const bool heavy = hs.size() >= 2 || (!hs.empty() && !h0.is_zero() &&
                                         macaulay_degree(homogenize_system(hs, h0, y).gammas) > opt.split_above_degree);
  if (opt.reduce_by_unit_initial && !h0.is_zero()) {
    // A Y-free equation c * e' with c its content: c = 0, or e' = 0 and c != 0.
    for (const auto& e : fixed) {
      if (!heavy) break;
      if (e.is_constant()) continue;
      Poly c = content(e, e.main_var());
      if (c.is_constant()) continue;
      std::vector<Poly> with_c{c}, with_pp{*divide_exact(e, c)};
      for (const auto& p : eqs)
        if (p != e) {
          with_c.push_back(p);
          with_pp.push_back(p);
        }
      auto out = quasi_gcd_impl(with_c, h0, y, squarefree, opt);
      for (auto& comp : quasi_gcd_impl(with_pp, h0 * c, y, squarefree, opt)) push_unique(out, std::move(comp));
      return out;
    }
    // Y-free equations with a constant initial reduce everything else exactly.
    for (const auto& e : fixed) {
      if (!heavy) break;
      if (e.is_constant() || !is_nonzero_constant(initial(e))) continue;
      const Var v = e.main_var();
      const unsigned d = e.degree(v);
      bool changed = false;
      std::vector<Poly> next;
      for (const auto& p : eqs) {
        if (p.is_zero()) continue;
        if (p != e && p.degree(v) >= d) {
          changed = true;
          next.push_back(pseudo_remainder(p, e, v));
        } else {
          next.push_back(p);
        }
      }
      Poly h = h0;
      if (h.degree(v) >= d) {
        changed = true;
        h = pseudo_remainder(h, e, v);
        if (h.is_zero()) return {};
      }
      if (changed) return quasi_gcd_impl(next, h, y, squarefree, opt);
    }
    auto invertible = [&](const Poly& init) {
      return is_nonzero_constant(init) || strip_factors(init, h0).is_constant();
    };
    const Poly* unit = nullptr;
    for (const auto& p : hs)
      if (invertible(univariate_coeffs(p, y).coeffs.back()) && (!unit || p.degree(y) < unit->degree(y))) unit = &p;
    if (unit) {
      const Poly g = *unit;
      bool changed = false;
      std::vector<Poly> next{g};
      for (const auto& p : hs) {
        if (&p == unit) continue;
        if (p.degree(y) < g.degree(y)) {
          next.push_back(p);
          continue;
        }
        changed = true;
        Poly r = pseudo_remainder(p, g, y);
        if (!r.is_zero()) next.push_back(std::move(r));
      }
      if (h0r.degree(y) >= g.degree(y)) {
        changed = true;
        h0r = pseudo_remainder(h0r, g, y);
        if (h0r.is_zero()) return {};
        // Keep the initial nonzero on every component.
        h0r *= univariate_coeffs(g, y).coeffs.back();
      }
      // Repeat until no input reduces further; the degree sum drops each time.
      if (changed) {
        h0r = trim_ineq(h0r, y);
        for (auto& p : next) p = trim_known_factors(p, h0r, y);
        next.insert(next.end(), fixed.begin(), fixed.end());
        return quasi_gcd_impl(next, h0r, y, squarefree, opt);
      }
    }
    // A linear input whose initial may vanish: split on the initial. When it
    // is nonzero the input becomes a reducer below, otherwise only its tail
    // remains.
    for (const auto& g : hs) {
      if (hs.size() < 2 || g.degree(y) != 1 || invertible(g.coeff(y, 1))) continue;
      const Poly init = g.coeff(y, 1);
      auto out = quasi_gcd_impl(eqs, h0 * init, y, squarefree, opt);
      std::vector<Poly> rest{init};
      bool replaced = false;
      for (const auto& p : eqs) {
        if (!replaced && p == g) {
          rest.push_back(g.coeff(y, 0));
          replaced = true;
        } else {
          rest.push_back(p);
        }
      }
      for (auto& c : quasi_gcd_impl(rest, h0, y, squarefree, opt)) push_unique(out, std::move(c));
      return out;
    }
    if (hs.size() >= 2 && macaulay_degree(homogenize_system(hs, h0r, y).gammas) > opt.split_above_degree) {
      const Poly* low = &hs.front();
      for (const auto& p : hs)
        if (p.degree(y) < low->degree(y)) low = &p;
      const Poly init = univariate_coeffs(*low, y).coeffs.back();
      std::vector<Poly> all = hs;
      all.insert(all.end(), fixed.begin(), fixed.end());
      auto out = quasi_gcd_impl(all, h0r * init, y, squarefree, opt);
      std::vector<Poly> rest{init, *low - init * Poly::var(y, low->degree(y))};
      for (const auto& p : hs)
        if (&p != low) rest.push_back(p);
      rest.insert(rest.end(), fixed.begin(), fixed.end());
      for (auto& c : quasi_gcd_impl(rest, h0r, y, squarefree, opt)) push_unique(out, std::move(c));
      return out;
    }
  }
  std::sort(hs.begin(), hs.end(), [&](const Poly& a, const Poly& b) {
    if (a.degree(y) != b.degree(y)) return a.degree(y) < b.degree(y);
    return canonical(a) < canonical(b);
  });

  std::vector<GcdComponent> out;

  // Coefficient component.
  {
    GcdComponent t0;
    bool consistent = true;
    auto add = [&](const Poly& p) {
      if (p.is_zero()) return;
      if (p.is_constant()) consistent = false;
      Poly c = canonical(p);
      if (std::find(t0.eqs.begin(), t0.eqs.end(), c) == t0.eqs.end()) t0.eqs.push_back(c);
    };
    for (const auto& p : fixed) add(p);
    for (const auto& h : hs)
      for (const auto& c : h.coeffs(y)) add(c);
    std::sort(t0.eqs.begin(), t0.eqs.end());
    t0.ineq = h0r.is_zero() ? Poly() : canonical(h0r);
    if (consistent && !h0r.is_zero()) out.push_back(std::move(t0));
  }

  // Y-free inputs are not part of the elimination; they are attached to
  // every component as they are.
  for (const auto& p : fixed)
    if (p.is_constant()) return {};
  std::size_t first = out.size();
  // Without parameters the components are known exactly: the gcd of the
  // inputs with the factors of h0 removed. Used when the matrix is large.
  auto only_y = [&](const Poly& p) {
    auto vs = p.variables();
    return std::all_of(vs.begin(), vs.end(), [&](Var v) { return v == y; });
  };
  if (!hs.empty() && fixed.empty() && std::all_of(hs.begin(), hs.end(), only_y) && only_y(h0r) &&
      macaulay_degree(homogenize_system(hs, h0r, y).gammas) > opt.split_above_degree) {
    Poly g = hs[0];
    for (const auto& p : hs) g = gcd(g, p);
    Poly psi = strip_factors(g, h0r);
    if (squarefree) psi = squarefree_part(psi);
    if (psi.degree(y) > 0) {
      GcdComponent c;
      c.psi = canonical(psi);
      push_unique(out, std::move(c));
    }
    return out;
  }
  run_cascade(hs, h0r, y, squarefree, heavy ? fixed : std::vector<Poly>{}, opt, out);
  for (std::size_t q = first; q < out.size(); ++q) {
    for (const auto& p : fixed) {
      Poly c = canonical(p);
      if (std::find(out[q].eqs.begin(), out[q].eqs.end(), c) == out[q].eqs.end()) out[q].eqs.push_back(c);
    }
    std::sort(out[q].eqs.begin(), out[q].eqs.end());
  }
  return out;
}

} // namespace detail

inline std::vector<GcdComponent> quasi_gcd(const std::vector<Poly>& eqs, const Poly& h0, Var y,
                                           const QuasiGcdOptions& opt = {}) {
  return detail::quasi_gcd_impl(eqs, h0, y, false, opt);
}

// As quasi_gcd, and additionally dpsi/dY does not vanish on any component
// with a psi.
inline std::vector<GcdComponent> squarefree_quasi_gcd(const std::vector<Poly>& eqs, const Poly& h0, Var y,
                                                      const QuasiGcdOptions& opt = {}) {
  return detail::quasi_gcd_impl(eqs, h0, y, true, opt);
}

} // namespace tdecomp
