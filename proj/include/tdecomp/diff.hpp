#pragma once
// Ordinary differential polynomials. A variable id encodes y_i^(j) (see
// vars.hpp), so the integer order of ids is the elimination ranking: class
// first, then derivative order. The leader of f is its main variable.

#include <optional>
#include <vector>

#include "tdecomp/poly.hpp"
#include "tdecomp/vars.hpp"

namespace tdecomp {

inline Var next_derivative(Var v) { return diff_var(diff_base(v), diff_order(v) + 1); }

// Formal total derivative d/dt, applied `times` times.
inline Poly differentiate(const Poly& f, unsigned times = 1) {
  Poly g = f;
  for (unsigned k = 0; k < times && !g.is_zero(); ++k) {
    Poly d;
    for (Var v : g.variables()) d += g.derivative(v) * Poly::var(next_derivative(v));
    g = std::move(d);
  }
  return g;
}

inline Var leader(const Poly& f) {
  if (f.is_constant()) throw ConstantPolynomial();
  return f.main_var();
}

inline unsigned diff_class(const Poly& f) { return diff_base(leader(f)); }

// Highest order of a derivative of y_base in f; nullopt when none occurs.
inline std::optional<unsigned> order_in(const Poly& f, unsigned base) {
  std::optional<unsigned> r;
  for (Var v : f.variables())
    if (diff_base(v) == base) r = std::max(r.value_or(0), diff_order(v));
  return r;
}

// Highest derivative order over all variables of f (0 for constants).
inline unsigned max_order(const Poly& f) {
  unsigned r = 0;
  for (Var v : f.variables()) r = std::max(r, diff_order(v));
  return r;
}

inline Poly separant(const Poly& f) { return f.derivative(leader(f)); }

namespace detail {

// Eliminates y^(r) (r above the order of ld(g)) from f using the k-th
// derivative of g, which is S_g y^(r) - H: f <- S_g^deg sum c_j (H/S_g)^j.
inline Poly replace_derivative(const Poly& f, const Poly& g, Var target) {
  unsigned k = diff_order(target) - diff_order(leader(g));
  Poly gk = differentiate(g, k);
  Poly s = gk.coeff(target, 1);
  Poly h = -gk.coeff(target, 0);
  auto cs = f.coeffs(target);
  const unsigned d = static_cast<unsigned>(cs.size() - 1);
  Poly out, hp(1);
  std::vector<Poly> spow{Poly(1)};
  for (unsigned j = 1; j <= d; ++j) spow.push_back(spow.back() * s);
  for (unsigned j = 0; j <= d; ++j) {
    if (!cs[j].is_zero()) out += cs[j] * hp * spow[d - j];
    if (j < d) hp *= h;
  }
  return out;
}

// Reduces every derivative of cls(g) above ld(g) in f.
inline Poly reduce_proper_derivatives(Poly f, const Poly& g) {
  const Var ld = leader(g);
  const unsigned base = diff_base(ld);
  while (true) {
    auto r = order_in(f, base);
    if (!r || *r <= diff_order(ld)) return f;
    f = replace_derivative(f, g, diff_var(base, *r));
  }
}

} // namespace detail

struct DpmResult {
  std::vector<Poly> eqs; // g0 first, then the reduced f_i that are nonzero
  Poly ineq;             // reduced f0 times S_g0
};

// Partial remainder of fs and f0 by g0: afterwards no derivative of cls(g0)
// above ld(g0) occurs, and zero(g0, fs / f0 S) = zero(g0, eqs / ineq).
inline DpmResult dpm(const Poly& g0, const std::vector<Poly>& fs, const Poly& f0) {
  if (g0.is_constant()) throw BadLeader("g0 is constant");
  DpmResult out;
  out.eqs.push_back(g0);
  for (const auto& f : fs) {
    Poly r = detail::reduce_proper_derivatives(f, g0);
    if (!r.is_zero()) out.eqs.push_back(std::move(r));
  }
  out.ineq = detail::reduce_proper_derivatives(f0, g0) * separant(g0);
  return out;
}

// As above, and ld(g0) must be a derivative of y_base.
inline DpmResult dpm(const Poly& g0, const std::vector<Poly>& fs, const Poly& f0, unsigned base) {
  if (g0.is_constant() || diff_class(g0) != base)
    throw BadLeader("leader of g0 is not a derivative of the split variable");
  return dpm(g0, fs, f0);
}

struct SplitComponent {
  std::vector<Poly> eqs;
  std::optional<Poly> pivot; // the equation whose partial is the inequation
  std::optional<Poly> ineq;  // absent for the coefficient component
};

// zero(G) = union over components of zero(eqs / ineq), the last component
// being the coefficients of G with respect to the derivatives of y_base.
inline std::vector<SplitComponent> split(const std::vector<Poly>& G, unsigned base) {
  std::vector<SplitComponent> out;
  std::vector<std::vector<Poly>> work{G};
  while (!work.empty()) {
    std::vector<Poly> F;
    bool consistent = true;
    for (auto& p : work.back()) {
      if (p.is_zero()) continue;
      if (p.is_constant()) consistent = false;
      if (std::find(F.begin(), F.end(), p) == F.end()) F.push_back(p);
    }
    work.pop_back();
    if (!consistent) continue;

    const Poly* pick = nullptr;
    unsigned t = 0;
    for (const auto& f : F) {
      auto r = order_in(f, base);
      if (!r) continue;
      if (!pick || *r > t || (*r == t && canonical(f) < canonical(*pick))) {
        pick = &f;
        t = *r;
      }
    }
    if (!pick) {
      out.push_back({F, std::nullopt, std::nullopt});
      continue;
    }
    const Poly f = *pick;
    std::vector<Poly> rest;
    for (const auto& p : F)
      if (&p != pick) rest.push_back(p);
    const Var v = diff_var(base, t);
    const unsigned d = f.degree(v);
    std::vector<Poly> partials{f};
    for (unsigned i = 1; i <= d; ++i) partials.push_back(partials.back().derivative(v));
    for (unsigned i = 1; i <= d; ++i) {
      SplitComponent c;
      for (unsigned j = 0; j < i; ++j) c.eqs.push_back(partials[j]);
      c.eqs.insert(c.eqs.end(), rest.begin(), rest.end());
      c.pivot = partials[i - 1];
      c.ineq = partials[i];
      out.push_back(std::move(c));
    }
    std::vector<Poly> next = rest;
    for (auto& l : f.coeffs(v))
      if (!l.is_zero()) next.push_back(std::move(l));
    work.push_back(std::move(next));
  }
  return out;
}

// Partial reduction of f by a triangular set: proper derivatives of every
// leader are eliminated, highest class first.
inline Poly partial_reduce(Poly f, const std::vector<Poly>& chain) {
  std::vector<Poly> sorted = chain;
  std::sort(sorted.begin(), sorted.end(), [](const Poly& a, const Poly& b) { return a.main_var() < b.main_var(); });
  for (std::size_t j = sorted.size(); j-- > 0 && !f.is_zero();) f = detail::reduce_proper_derivatives(f, sorted[j]);
  return f;
}

struct DiffChain {
  std::vector<Poly> polys; // ascending by leader, pairwise distinct classes
  Poly ineq_product = Poly(1);
  std::vector<unsigned> params; // classes that lead no chain polynomial

  std::vector<Poly> initials() const {
    std::vector<Poly> out;
    for (const auto& p : polys) out.push_back(initial(p));
    return out;
  }
  std::vector<Poly> separants() const {
    std::vector<Poly> out;
    for (const auto& p : polys) out.push_back(separant(p));
    return out;
  }

  friend bool operator==(const DiffChain& a, const DiffChain& b) {
    return a.polys == b.polys && a.ineq_product == b.ineq_product;
  }
};

} // namespace tdecomp
