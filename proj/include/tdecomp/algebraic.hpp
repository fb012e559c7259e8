#pragma once
// Triangular decomposition of algebraic systems into regular chains,
// zero(H) = union of zero(sat(A_q)).

#include <functional>
#include <set>
#include <vector>

#include "tdecomp/linalg.hpp"
#include "tdecomp/quasi_gcd.hpp"
#include "tdecomp/vars.hpp"

namespace tdecomp {

// Branch state: found (triangular so far), pending equations, inequations.
struct SystemTriple {
  std::vector<Poly> found;
  std::vector<Poly> pending;
  std::vector<Poly> ineqs;

  friend bool operator==(const SystemTriple&, const SystemTriple&) = default;
  friend auto operator<=>(const SystemTriple& a, const SystemTriple& b) {
    auto key = [](const SystemTriple& t) { return std::tie(t.found, t.pending, t.ineqs); };
    if (key(a) < key(b)) return std::strong_ordering::less;
    if (key(b) < key(a)) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

struct Chain {
  std::vector<Poly> polys; // ascending by leading variable
  Poly ineq_product = Poly(1);
  std::vector<Var> params;

  friend bool operator==(const Chain& a, const Chain& b) {
    return a.polys == b.polys && a.ineq_product == b.ineq_product;
  }
};

struct TraceNode {
  std::size_t id = 0;
  std::size_t parent = 0; // 0 for the root
  SystemTriple triple;
  std::optional<Var> eliminated; // main variable of the step taken from this node
};

struct DecomposeOptions {
  std::size_t max_branches = 10000;
  bool dimension_prune = true;
  QuasiGcdOptions gcd;
  std::function<void(const TraceNode&)> trace;
};

namespace detail {

inline void insert_sorted_unique(std::vector<Poly>& v, Poly p) {
  auto it = std::lower_bound(v.begin(), v.end(), p);
  if (it == v.end() || *it != p) v.insert(it, std::move(p));
}

// Adds p to a pending list; false when p is a nonzero constant.
inline bool add_pending(std::vector<Poly>& v, const Poly& p) {
  if (p.is_zero()) return true;
  if (p.is_constant()) return false;
  insert_sorted_unique(v, canonical(p));
  return true;
}

// Adds p != 0 to an inequation list; false when p is zero.
inline bool add_ineq(std::vector<Poly>& v, const Poly& p) {
  if (p.is_zero()) return false;
  if (p.is_constant()) return true;
  insert_sorted_unique(v, squarefree_part(p));
  return true;
}

inline Var max_leading_variable(const std::vector<Poly>& ps) {
  Var m = 0;
  for (const auto& p : ps) m = std::max(m, p.main_var());
  return m;
}

inline std::vector<Poly> sort_by_leader(std::vector<Poly> ps) {
  std::sort(ps.begin(), ps.end(), [](const Poly& a, const Poly& b) { return a.main_var() < b.main_var(); });
  return ps;
}

inline Poly product(const std::vector<Poly>& ps) {
  Poly out(1);
  for (const auto& p : ps) out *= p;
  return out;
}

inline std::vector<Var> chain_params(const std::vector<Poly>& polys, const std::vector<Var>& vars) {
  std::vector<Var> out;
  for (Var v : vars) {
    bool led = false;
    for (const auto& p : polys) led = led || p.main_var() == v;
    if (!led) out.push_back(v);
  }
  return out;
}

} // namespace detail

inline std::vector<Chain> decompose(const std::vector<Poly>& input, const VarOrder& ord,
                                    const DecomposeOptions& opt = {}) {
  const std::vector<Var> vars = ord.vars();
  if (input.empty()) throw EmptySystem();
  SystemTriple root;
  for (const auto& p : input)
    if (!detail::add_pending(root.pending, p)) throw Inconsistent();
  if (root.pending.empty()) throw EmptySystem();
  const std::size_t k = input.size();

  struct Item {
    SystemTriple t;
    std::size_t id, parent;
  };
  std::vector<Item> stack{{root, 1, 0}};
  std::set<SystemTriple> seen{root};
  std::vector<Chain> result;
  std::size_t next_id = 2, steps = 0;

  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    if (++steps > opt.max_branches) throw BranchLimitExceeded(opt.max_branches);
    SystemTriple& t = item.t;
    TraceNode node{item.id, item.parent, t, std::nullopt};

    if (opt.dimension_prune && t.found.size() > k) {
      if (opt.trace) opt.trace(node);
      continue;
    }
    if (t.pending.empty()) {
      if (opt.trace) opt.trace(node);
      Chain c;
      c.polys = detail::sort_by_leader(t.found);
      c.ineq_product = canonical(detail::product(t.ineqs));
      c.params = detail::chain_params(c.polys, vars);
      if (std::find(result.begin(), result.end(), c) == result.end()) result.push_back(std::move(c));
      continue;
    }

    Var xg = detail::max_leading_variable(t.pending);
    node.eliminated = xg;
    if (opt.trace) opt.trace(node);
    std::vector<Poly> top, rest;
    for (const auto& p : t.pending) (p.main_var() == xg ? top : rest).push_back(p);
    std::vector<Poly> kept, consumed;
    for (const auto& f : t.ineqs) (f.main_var() <= xg ? consumed : kept).push_back(f);
    Poly h = detail::product(consumed);

    for (const auto& comp : quasi_gcd(top, h, xg, opt.gcd)) {
      SystemTriple base;
      base.found = t.found;
      if (comp.psi) detail::insert_sorted_unique(base.found, *comp.psi);
      bool ok = true;
      for (const auto& e : comp.eqs) ok = ok && detail::add_pending(base.pending, e);
      for (const auto& p : rest) ok = ok && detail::add_pending(base.pending, p);
      base.ineqs = kept;
      ok = ok && detail::add_ineq(base.ineqs, comp.ineq);
      if (!ok) continue;

      std::vector<SystemTriple> children;
      const Poly& v = comp.ineq;
      if (base.pending.empty() || v.is_constant() || v.main_var() <= detail::max_leading_variable(base.pending)) {
        children.push_back(std::move(base));
      } else {
        Var xe = detail::max_leading_variable(base.pending);
        for (const auto& l : coefficients_above(v, xe)) {
          SystemTriple c = base;
          if (detail::add_ineq(c.ineqs, l)) children.push_back(std::move(c));
        }
      }
      for (auto& c : children) {
        if (!seen.insert(c).second) continue;
        stack.push_back({std::move(c), next_id++, item.id});
      }
    }
  }

  std::sort(result.begin(), result.end(), [](const Chain& a, const Chain& b) {
    if (a.polys != b.polys) return a.polys < b.polys;
    return a.ineq_product < b.ineq_product;
  });
  return result;
}

struct Certificate {
  bool pass = true;
  std::vector<Poly> witnesses; // one iterated resultant per checked polynomial
};

// Iterated resultant of p against chain[0..upto) from the top down.
inline Poly iterated_resultant(Poly p, const std::vector<Poly>& chain, std::size_t upto) {
  for (std::size_t j = upto; j-- > 0;) {
    if (p.is_zero()) break;
    Var v = chain[j].main_var();
    if (p.degree(v) == 0) continue;
    p = resultant(p, chain[j], v);
  }
  return p;
}

// init(T_i) must not vanish identically on the preceding sub-chain: its
// iterated resultant is a nonzero polynomial in the parameters.
inline Certificate chain_regularity_certificate(const std::vector<Poly>& polys) {
  Certificate c;
  auto sorted = detail::sort_by_leader(polys);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    Poly w = iterated_resultant(initial(sorted[i]), sorted, i);
    if (w.is_zero()) c.pass = false;
    c.witnesses.push_back(std::move(w));
  }
  return c;
}

inline Certificate chain_regularity_certificate(const Chain& ch) { return chain_regularity_certificate(ch.polys); }

} // namespace tdecomp
