#pragma once
// Decomposition of an ordinary differential system into saturated chains,
// zero(H) = union of zero(dsat(A_q)).

#include <functional>
#include <set>
#include <vector>

#include "tdecomp/algebraic.hpp"
#include "tdecomp/diff.hpp"
#include "tdecomp/quasi_gcd.hpp"

namespace tdecomp {

struct DiffDecomposeOptions {
  std::size_t max_branches = 10000;
  QuasiGcdOptions gcd;
  std::function<void(const TraceNode&)> trace;
};

namespace detail {

inline std::vector<unsigned> chain_classes(const std::vector<Poly>& polys) {
  std::vector<unsigned> out;
  for (const auto& p : polys) out.push_back(diff_class(p));
  return out;
}

inline DiffChain make_dchain(const SystemTriple& t, std::size_t num_classes) {
  DiffChain c;
  c.polys = sort_by_leader(t.found);
  c.ineq_product = canonical(product(t.ineqs));
  auto led = chain_classes(c.polys);
  for (unsigned b = 1; b <= num_classes; ++b)
    if (std::find(led.begin(), led.end(), b) == led.end()) c.params.push_back(b);
  return c;
}

inline std::size_t count_classes(const std::vector<Poly>& ps) {
  std::size_t n = 0;
  for (const auto& p : ps)
    for (Var v : p.variables()) n = std::max<std::size_t>(n, diff_base(v));
  return n;
}

} // namespace detail

// num_classes is the number of differential indeterminates (for the chain
// parameters); 0 means the largest class occurring in the input.
inline std::vector<DiffChain> ddecompose(const std::vector<Poly>& input, std::size_t num_classes = 0,
                                         const DiffDecomposeOptions& opt = {}) {
  if (input.empty()) throw EmptySystem();
  SystemTriple root;
  for (const auto& p : input)
    if (!detail::add_pending(root.pending, p)) throw Inconsistent();
  if (root.pending.empty()) throw EmptySystem();
  if (num_classes == 0) num_classes = detail::count_classes(input);

  struct Item {
    SystemTriple t;
    std::size_t id, parent;
  };
  std::vector<Item> stack{{root, 1, 0}};
  std::set<SystemTriple> seen{root};
  std::vector<DiffChain> result;
  std::size_t next_id = 2, steps = 0;

  auto push = [&](SystemTriple c, std::size_t parent) {
    if (seen.insert(c).second) stack.push_back({std::move(c), next_id++, parent});
  };

  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    if (++steps > opt.max_branches) throw BranchLimitExceeded(opt.max_branches);
    const SystemTriple& t = item.t;
    TraceNode node{item.id, item.parent, t, std::nullopt};

    if (t.pending.empty()) {
      if (opt.trace) opt.trace(node);
      DiffChain c = detail::make_dchain(t, num_classes);
      if (std::find(result.begin(), result.end(), c) == result.end()) result.push_back(std::move(c));
      continue;
    }

    const Var ya = detail::max_leading_variable(t.pending);
    const unsigned alpha = diff_base(ya);
    node.eliminated = ya;
    if (opt.trace) opt.trace(node);
    std::vector<Poly> top, rest;
    for (const auto& p : t.pending) (p.main_var() == ya ? top : rest).push_back(p);
    Poly h(1);
    for (const auto& f : t.ineqs)
      if (f.main_var() <= ya) h *= f;

    for (const auto& comp : squarefree_quasi_gcd(top, h, ya, opt.gcd)) {
      std::vector<Poly> W;
      if (comp.psi) W.push_back(*comp.psi);
      const Poly& v = comp.ineq;
      std::vector<Poly> U = comp.eqs;
      U.insert(U.end(), rest.begin(), rest.end());

      if (U.empty()) {
        SystemTriple c;
        c.found = t.found;
        for (const auto& w : W) detail::insert_sorted_unique(c.found, w);
        c.ineqs = t.ineqs;
        if (detail::add_ineq(c.ineqs, v)) push(std::move(c), item.id);
        continue;
      }

      for (const auto& sc : split(U, alpha)) {
        if (sc.ineq) {
          std::vector<Poly> fs = W;
          bool skipped = false;
          for (const auto& p : sc.eqs) {
            if (!skipped && p == *sc.pivot) {
              skipped = true;
              continue;
            }
            fs.push_back(p);
          }
          auto r = dpm(*sc.pivot, fs, v, alpha);
          SystemTriple c;
          c.found = t.found;
          c.ineqs = t.ineqs;
          bool ok = detail::add_ineq(c.ineqs, r.ineq);
          for (const auto& e : r.eqs) ok = ok && detail::add_pending(c.pending, e);
          if (ok) push(std::move(c), item.id);
          continue;
        }

        SystemTriple base;
        base.found = t.found;
        for (const auto& w : W) detail::insert_sorted_unique(base.found, w);
        base.ineqs = t.ineqs;
        bool ok = detail::add_ineq(base.ineqs, v);
        for (const auto& e : sc.eqs) ok = ok && detail::add_pending(base.pending, e);
        if (!ok) continue;
        if (base.pending.empty() || v.is_constant() || v.main_var() <= detail::max_leading_variable(base.pending)) {
          push(std::move(base), item.id);
          continue;
        }
        Var ye = detail::max_leading_variable(base.pending);
        for (const auto& l : coefficients_above(v, ye)) {
          SystemTriple c = base;
          if (detail::add_ineq(c.ineqs, l)) push(std::move(c), item.id);
        }
      }
    }
  }

  std::sort(result.begin(), result.end(), [](const DiffChain& a, const DiffChain& b) {
    if (a.polys != b.polys) return a.polys < b.polys;
    return a.ineq_product < b.ineq_product;
  });
  return result;
}

inline std::vector<DiffChain> ddecompose(const std::vector<Poly>& input, const VarOrder& ord,
                                         const DiffDecomposeOptions& opt = {}) {
  return ddecompose(input, ord.size(), opt);
}

// Initials and separants must not vanish identically on the preceding
// sub-chain: each is partially reduced by the earlier chain elements and its
// iterated resultant against the chain (up to and including its own element)
// must be nonzero. Witnesses come in pairs (initial, separant) per element.
inline Certificate dchain_saturation_certificate(const std::vector<Poly>& polys) {
  Certificate c;
  auto sorted = detail::sort_by_leader(polys);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    std::vector<Poly> below(sorted.begin(), sorted.begin() + i);
    for (const Poly& h : {initial(sorted[i]), separant(sorted[i])}) {
      Poly w = iterated_resultant(partial_reduce(h, below), sorted, i + 1);
      if (w.is_zero()) c.pass = false;
      c.witnesses.push_back(std::move(w));
    }
  }
  return c;
}

inline Certificate dchain_saturation_certificate(const DiffChain& c) { return dchain_saturation_certificate(c.polys); }

// Order bound 2^n R with R one more than the highest order in the input.
inline unsigned differential_order_bound(const std::vector<Poly>& input, std::size_t num_classes) {
  unsigned r = 0;
  for (const auto& p : input) r = std::max(r, max_order(p));
  return (1u << num_classes) * (r + 1);
}

} // namespace tdecomp
