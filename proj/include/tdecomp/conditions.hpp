#pragma once
// A conjunction of polynomial equations and inequations over the parameter
// variables, with cheap tests for "certainly zero" and "certainly nonzero".
// Everything is stored canonical and squarefree. Factors shared with an
// inequation are divided out of equations, and equations in one and the same
// single variable are replaced by their gcd, so contradictions among
// univariate conditions are caught.

#include <optional>
#include <vector>

#include "tdecomp/poly.hpp"

namespace tdecomp {

namespace detail {

inline std::optional<Var> single_variable(const Poly& p) {
  auto vs = p.variables();
  if (vs.size() != 1) return std::nullopt;
  return vs[0];
}

// q with every factor it shares with f removed.
inline Poly strip_factors(Poly q, const Poly& f) {
  while (!q.is_constant()) {
    Poly g = gcd(q, f);
    if (g.is_constant()) break;
    q = canonical(*divide_exact(q, g));
  }
  return q;
}

} // namespace detail

class Conditions {
public:
  const std::vector<Poly>& eqs() const { return eqs_; }
  const std::vector<Poly>& ineqs() const { return ineqs_; }

  Poly ineq_product() const {
    Poly p(1);
    for (const auto& f : ineqs_) p *= f;
    return p;
  }

  // p vanishes wherever the equations hold (some equation divides p).
  bool certainly_zero(const Poly& p) const {
    if (p.is_zero()) return true;
    if (p.is_constant()) return false;
    for (const auto& e : eqs_)
      if (divides(e, p)) return true;
    return false;
  }

  // p is nonzero wherever the inequations hold.
  bool certainly_nonzero(const Poly& p) const {
    if (p.is_zero()) return false;
    if (p.is_constant()) return true;
    Poly c = canonical(p);
    for (const auto& f : ineqs_)
      if (f == c) return true;
    if (auto v = detail::single_variable(c))
      for (const auto& e : eqs_)
        if (detail::single_variable(e) == v && gcd(c, e).is_constant()) return true;
    if (ineqs_.empty()) return false;
    Poly prod = ineq_product();
    if (c.total_degree() > prod.total_degree()) {
      c = squarefree_part(c);
      if (c.total_degree() > prod.total_degree()) return false;
    }
    return divides(c, prod) || divides(squarefree_part(c), prod);
  }

  // Adds p = 0. Returns false when the conditions become contradictory.
  bool add_eq(const Poly& p) {
    if (p.is_zero()) return true;
    if (p.is_constant()) return false;
    if (certainly_zero(p)) return true;
    Poly q = squarefree_part(p);
    for (const auto& f : ineqs_) {
      q = detail::strip_factors(q, f);
      if (q.is_constant()) return false;
    }
    if (auto v = detail::single_variable(q)) {
      for (const auto& e : eqs_)
        if (detail::single_variable(e) == v) q = gcd(q, e);
      if (q.is_constant()) return false;
      std::erase_if(eqs_, [&](const Poly& e) { return detail::single_variable(e) == v; });
    }
    if (certainly_zero(q)) return true;
    std::erase_if(eqs_, [&](const Poly& e) { return divides(q, e); });
    eqs_.push_back(q);
    std::sort(eqs_.begin(), eqs_.end());
    return true;
  }

  // Adds p != 0. Returns false when the conditions become contradictory.
  bool add_ineq(const Poly& p) {
    if (p.is_zero()) return false;
    if (p.is_constant()) return true;
    if (certainly_zero(p)) return false;
    if (certainly_nonzero(p)) return true;
    Poly f = squarefree_part(p);
    for (auto& e : eqs_) {
      e = detail::strip_factors(e, f);
      if (e.is_constant()) return false;
    }
    std::sort(eqs_.begin(), eqs_.end());
    ineqs_.push_back(f);
    std::sort(ineqs_.begin(), ineqs_.end());
    return true;
  }

  friend bool operator==(const Conditions& a, const Conditions& b) { return a.eqs_ == b.eqs_ && a.ineqs_ == b.ineqs_; }

private:
  std::vector<Poly> eqs_;
  std::vector<Poly> ineqs_;
};

} // namespace tdecomp
