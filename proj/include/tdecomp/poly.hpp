#pragma once
// Sparse multivariate polynomials with exact rational coefficients.
//
// Variables are plain integer ids and the integer order IS the variable
// order: a larger id is a greater variable. Terms are kept sorted in
// descending lexicographic order (greatest variable compared first), so the
// leading term always carries the leading variable.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tdecomp/errors.hpp"

namespace tdecomp {

using Var = std::uint32_t;
using Rational = mpq_class;

// Auxiliary variables of the resultant construction. They rank above every
// user variable; U > U0 > U1 is the fixed lex order used for U-monomials.
inline constexpr Var kAuxBase = 0xFFFFFF00u;
inline constexpr Var kY0 = kAuxBase + 0;
inline constexpr Var kY1 = kAuxBase + 1;
inline constexpr Var kU1 = kAuxBase + 2;
inline constexpr Var kU0 = kAuxBase + 3;
inline constexpr Var kU = kAuxBase + 4;

inline bool is_aux(Var v) { return v >= kAuxBase; }

class Monomial {
public:
  using Factor = std::pair<Var, unsigned>;

  Monomial() = default;
  // Factors in any order; zero exponents dropped, repeated vars merged.
  explicit Monomial(std::vector<Factor> f) {
    std::sort(f.begin(), f.end(), [](const Factor& a, const Factor& b) { return a.first > b.first; });
    for (auto& [v, e] : f) {
      if (e == 0) continue;
      if (!f_.empty() && f_.back().first == v)
        f_.back().second += e;
      else
        f_.emplace_back(v, e);
    }
  }
  static Monomial var(Var v, unsigned e = 1) {
    Monomial m;
    if (e) m.f_.emplace_back(v, e);
    return m;
  }

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }

  unsigned degree(Var v) const {
    for (const auto& [w, e] : f_) {
      if (w == v) return e;
      if (w < v) break;
    }
    return 0;
  }
  unsigned total_degree() const {
    unsigned s = 0;
    for (const auto& fe : f_) s += fe.second;
    return s;
  }
  // Largest variable present. Pre: !is_one().
  Var max_var() const { return f_.front().first; }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    r.f_.reserve(f_.size() + o.f_.size());
    std::size_t i = 0, j = 0;
    while (i < f_.size() || j < o.f_.size()) {
      if (j == o.f_.size() || (i < f_.size() && f_[i].first > o.f_[j].first)) {
        r.f_.push_back(f_[i++]);
      } else if (i == f_.size() || o.f_[j].first > f_[i].first) {
        r.f_.push_back(o.f_[j++]);
      } else {
        r.f_.emplace_back(f_[i].first, f_[i].second + o.f_[j].second);
        ++i;
        ++j;
      }
    }
    return r;
  }

  bool divides(const Monomial& o) const {
    std::size_t j = 0;
    for (const auto& [v, e] : f_) {
      while (j < o.f_.size() && o.f_[j].first > v) ++j;
      if (j == o.f_.size() || o.f_[j].first != v || o.f_[j].second < e) return false;
    }
    return true;
  }

  // Pre: d.divides(*this).
  Monomial operator/(const Monomial& d) const {
    Monomial r;
    std::size_t j = 0;
    for (const auto& [v, e] : f_) {
      unsigned sub = 0;
      if (j < d.f_.size() && d.f_[j].first == v) sub = d.f_[j++].second;
      if (e > sub) r.f_.emplace_back(v, e - sub);
    }
    return r;
  }

  // Splits off the exponent of v.
  std::pair<unsigned, Monomial> extract(Var v) const {
    Monomial r;
    unsigned e = 0;
    for (const auto& fe : f_) {
      if (fe.first == v)
        e = fe.second;
      else
        r.f_.push_back(fe);
    }
    return {e, r};
  }

  friend int compare(const Monomial& a, const Monomial& b) {
    std::size_t n = std::min(a.f_.size(), b.f_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a.f_[i].first != b.f_[i].first) return a.f_[i].first > b.f_[i].first ? 1 : -1;
      if (a.f_[i].second != b.f_[i].second) return a.f_[i].second > b.f_[i].second ? 1 : -1;
    }
    if (a.f_.size() == b.f_.size()) return 0;
    return a.f_.size() > b.f_.size() ? 1 : -1;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }
  friend bool operator>(const Monomial& a, const Monomial& b) { return compare(a, b) > 0; }

private:
  std::vector<Factor> f_; // descending by variable
};

struct Term {
  Monomial mono;
  Rational coef;
};

class Poly {
public:
  Poly() = default;
  Poly(long c) { // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({Monomial(), Rational(c)});
  }
  Poly(const Rational& c) { // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({Monomial(), c});
  }
  static Poly var(Var v, unsigned e = 1) { return monomial(Monomial::var(v, e), 1); }
  static Poly monomial(Monomial m, Rational c) {
    Poly p;
    if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }
  // Pre: monomials strictly descending, coefficients nonzero.
  static Poly from_sorted_terms(std::vector<Term> t) {
    Poly p;
    p.terms_ = std::move(t);
    return p;
  }
  // Terms in any order; like terms combined.
  static Poly from_terms(std::vector<Term> t) {
    std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
    Poly p;
    for (auto& x : t) {
      if (!p.terms_.empty() && p.terms_.back().mono == x.mono)
        p.terms_.back().coef += x.coef;
      else {
        if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
        p.terms_.push_back(std::move(x));
      }
    }
    if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_value() const { return terms_.empty() ? Rational(0) : terms_[0].coef; }
  const Term& lead() const { return terms_.front(); }
  Rational lead_coef() const { return terms_.empty() ? Rational(0) : terms_.front().coef; }

  Var main_var() const {
    if (is_constant()) throw ConstantPolynomial();
    return terms_.front().mono.max_var();
  }

  unsigned degree(Var v) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree(v));
    return d;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
  }
  bool contains(Var v) const { return degree(v) > 0; }

  // Variables present, descending.
  std::vector<Var> variables() const {
    std::vector<Var> vs;
    for (const auto& t : terms_)
      for (const auto& fe : t.mono.factors()) vs.push_back(fe.first);
    std::sort(vs.begin(), vs.end(), std::greater<>());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = add(*this, o, false); }
  Poly& operator-=(const Poly& o) { return *this = add(*this, o, true); }
  Poly& operator*=(const Poly& o) { return *this = mul(*this, o); }
  friend Poly operator+(const Poly& a, const Poly& b) { return add(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return add(a, b, true); }
  friend Poly operator*(const Poly& a, const Poly& b) { return mul(a, b); }

  Poly scaled(const Rational& c) const {
    if (c == 0) return Poly();
    Poly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }
  // Multiplication by a single term; keeps the order without resorting.
  Poly times_term(const Monomial& m, const Rational& c) const {
    Poly r;
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;
  }

  Poly pow(unsigned e) const {
    Poly result(1), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  // Coefficient of v^d, a polynomial free of v.
  Poly coeff(Var v, unsigned d) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      auto [e, rest] = t.mono.extract(v);
      if (e == d) out.push_back({std::move(rest), t.coef});
    }
    Poly p;
    p.terms_ = std::move(out); // extraction keeps relative order
    return p;
  }
  // coeffs[j] is the coefficient of v^j.
  std::vector<Poly> coeffs(Var v) const {
    std::vector<Poly> c(degree(v) + 1);
    for (const auto& t : terms_) {
      auto [e, rest] = t.mono.extract(v);
      c[e].terms_.push_back({std::move(rest), t.coef});
    }
    return c;
  }
  static Poly from_coeffs(const std::vector<Poly>& c, Var v) {
    Poly r;
    for (std::size_t j = 0; j < c.size(); ++j) r += c[j].times_term(Monomial::var(v, static_cast<unsigned>(j)), 1);
    return r;
  }

  Poly derivative(Var v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      auto [e, rest] = t.mono.extract(v);
      if (e == 0) continue;
      out.push_back({rest * Monomial::var(v, e - 1), t.coef * e});
    }
    return from_terms(std::move(out));
  }

  Poly substitute(Var v, const Poly& value) const {
    if (!contains(v)) return *this;
    auto c = coeffs(v);
    Poly r = c.back();
    for (std::size_t j = c.size() - 1; j-- > 0;) r = r * value + c[j];
    return r;
  }

  friend int compare(const Poly& a, const Poly& b) {
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      int c = compare(a.terms_[i].mono, b.terms_[i].mono);
      if (c) return c;
      int k = cmp(a.terms_[i].coef, b.terms_[i].coef);
      if (k) return k > 0 ? 1 : -1;
    }
    if (a.terms_.size() == b.terms_.size()) return 0;
    return a.terms_.size() > b.terms_.size() ? 1 : -1;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Poly& a, const Poly& b) { return compare(a, b) != 0; }
  friend bool operator<(const Poly& a, const Poly& b) { return compare(a, b) < 0; }

private:
  static Poly add(const Poly& a, const Poly& b, bool negate_b) {
    Poly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size())
        c = -1;
      else if (j == b.terms_.size())
        c = 1;
      else
        c = compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(b.terms_[j++]);
        if (negate_b) r.terms_.back().coef = -r.terms_.back().coef;
      } else {
        Rational s = negate_b ? Rational(a.terms_[i].coef - b.terms_[j].coef) : Rational(a.terms_[i].coef + b.terms_[j].coef);
        if (s != 0) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }
  static Poly mul(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.terms_.size() == 1) return b.times_term(a.terms_[0].mono, a.terms_[0].coef);
    if (b.terms_.size() == 1) return a.times_term(b.terms_[0].mono, b.terms_[0].coef);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, s.coef * t.coef});
    return from_terms(std::move(out));
  }

  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Rational normalisation

inline Rational rational_content(const Poly& p) {
  if (p.is_zero()) return 0;
  mpz_class num = 0, den = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  Rational c(num, den);
  c.canonicalize();
  return c;
}

// Primitive integer polynomial with positive leading coefficient.
inline Poly canonical(const Poly& p) {
  if (p.is_zero()) return p;
  Rational c = rational_content(p);
  if (p.lead_coef() < 0) c = -c;
  return p.scaled(1 / c);
}

inline bool is_nonzero_constant(const Poly& p) { return p.is_constant() && !p.is_zero(); }

// ---------------------------------------------------------------------------
// Division

// Quotient if b divides a exactly.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error("division by zero polynomial");
  if (a.is_zero()) return Poly();
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  for (Var v : b.variables())
    if (a.degree(v) < b.degree(v)) return std::nullopt;
  // The remainder lives in an ordered map so each step only touches |b|
  // terms; quotient terms come out in descending order.
  std::map<Monomial, Rational, std::greater<>> r;
  for (const auto& t : a.terms()) r.emplace(t.mono, t.coef);
  std::vector<Term> q;
  const Term& lb = b.lead();
  while (!r.empty()) {
    const auto& [lm, lc] = *r.begin();
    if (!lb.mono.divides(lm)) return std::nullopt;
    Monomial m = lm / lb.mono;
    Rational c = lc / lb.coef;
    for (const auto& t : b.terms()) {
      auto [it, fresh] = r.try_emplace(t.mono * m, 0);
      it->second -= t.coef * c;
      if (it->second == 0) r.erase(it);
    }
    q.push_back({std::move(m), std::move(c)});
  }
  return Poly::from_sorted_terms(std::move(q));
}

inline bool divides(const Poly& d, const Poly& a) { return divide_exact(a, d).has_value(); }

struct PseudoRemainder {
  Poly rem;
  unsigned exponent = 0; // init(g)^exponent * f - rem is a multiple of g
};

// Pseudo-remainder multiplying by init(g) only when a reduction step is taken.
inline PseudoRemainder pseudo_remainder_ex(const Poly& f, const Poly& g, Var v) {
  unsigned dg = g.degree(v);
  if (dg == 0) throw BadDivisor();
  Poly init = g.coeff(v, dg);
  Poly tail = g - init.times_term(Monomial::var(v, dg), 1);
  PseudoRemainder out{f, 0};
  while (!out.rem.is_zero()) {
    unsigned dr = out.rem.degree(v);
    if (dr < dg) break;
    Poly lc = out.rem.coeff(v, dr);
    Poly r_tail = out.rem - lc.times_term(Monomial::var(v, dr), 1);
    out.rem = init * r_tail - (lc * tail).times_term(Monomial::var(v, dr - dg), 1);
    ++out.exponent;
  }
  return out;
}

inline Poly pseudo_remainder(const Poly& f, const Poly& g, Var v) { return pseudo_remainder_ex(f, g, v).rem; }

// ---------------------------------------------------------------------------
// GCD, content and squarefree part over Q

Poly gcd(const Poly& a, const Poly& b);

// gcd of the coefficients of p viewed in v.
inline Poly content(const Poly& p, Var v) {
  if (p.is_zero()) return p;
  auto cs = p.coeffs(v);
  Poly g;
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? canonical(c) : gcd(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

inline Poly primitive_part(const Poly& p, Var v) {
  if (p.is_zero()) return p;
  Poly c = content(p, v);
  return canonical(*divide_exact(p, c));
}

inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return canonical(b);
  if (b.is_zero()) return canonical(a);
  if (a.is_constant() || b.is_constant()) return Poly(1);
  Poly ca = canonical(a), cb = canonical(b);
  if (ca == cb) return ca;
  if (ca.size() <= cb.size() ? divides(ca, cb) : false) return ca;
  if (cb.size() <= ca.size() ? divides(cb, ca) : false) return cb;
  Var v = std::max(ca.main_var(), cb.main_var());
  if (!ca.contains(v)) return gcd(ca, content(cb, v));
  if (!cb.contains(v)) return gcd(content(ca, v), cb);
  Poly conta = content(ca, v), contb = content(cb, v);
  Poly c = gcd(conta, contb);
  Poly p = canonical(*divide_exact(ca, conta)), q = canonical(*divide_exact(cb, contb));
  if (p.degree(v) < q.degree(v)) std::swap(p, q);
  Poly g;
  while (true) {
    Poly r = pseudo_remainder(p, q, v);
    if (r.is_zero()) {
      g = q;
      break;
    }
    if (r.degree(v) == 0) {
      g = Poly(1);
      break;
    }
    p = std::move(q);
    q = primitive_part(r, v);
  }
  if (!g.is_constant()) g = primitive_part(g, v);
  return canonical(c * g);
}

inline Poly squarefree_part(const Poly& p) {
  if (p.is_zero()) return p;
  if (p.is_constant()) return Poly(1);
  Var v = p.main_var();
  Poly c = content(p, v);
  Poly pp = *divide_exact(p, c);
  Poly g = gcd(pp, pp.derivative(v));
  Poly s = *divide_exact(pp, g);
  return canonical(squarefree_part(c) * s);
}

// ---------------------------------------------------------------------------
// Ordering-dependent accessors

struct UnivView {
  Var main;
  std::vector<Poly> coeffs; // coeffs[j] multiplies main^j
};

inline UnivView univariate_coeffs(const Poly& p, Var v) {
  UnivView u{v, p.coeffs(v)};
  if (p.is_zero()) u.coeffs.clear();
  return u;
}

inline Var leading_variable(const Poly& p) { return p.main_var(); }
inline unsigned leading_degree(const Poly& p) { return p.degree(p.main_var()); }
inline Poly initial(const Poly& p) {
  Var v = p.main_var();
  return p.coeff(v, p.degree(v));
}

// Splits p as a polynomial in the variables `above` (those > bound) with
// coefficients in the remaining variables. Coefficients returned canonical
// and deduplicated.
inline std::vector<Poly> coefficients_above(const Poly& p, Var bound) {
  std::vector<std::pair<Monomial, std::vector<Term>>> groups;
  for (const auto& t : p.terms()) {
    std::vector<Monomial::Factor> hi, lo;
    for (const auto& fe : t.mono.factors()) (fe.first > bound ? hi : lo).push_back(fe);
    Monomial mh(hi);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == mh; });
    if (it == groups.end()) {
      groups.push_back({mh, {}});
      it = std::prev(groups.end());
    }
    it->second.push_back({Monomial(lo), t.coef});
  }
  std::vector<Poly> out;
  for (auto& g : groups) {
    Poly c = canonical(Poly::from_terms(std::move(g.second)));
    if (!c.is_zero() && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Substitutes rational values for some variables.
inline Poly evaluate(const Poly& p, const std::map<Var, Rational>& at) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Rational c = t.coef;
    std::vector<Monomial::Factor> rest;
    for (const auto& [v, e] : t.mono.factors()) {
      auto it = at.find(v);
      if (it == at.end()) {
        rest.emplace_back(v, e);
      } else {
        Rational pw(1);
        mpz_pow_ui(pw.get_num_mpz_t(), it->second.get_num_mpz_t(), e);
        mpz_pow_ui(pw.get_den_mpz_t(), it->second.get_den_mpz_t(), e);
        c *= pw;
      }
    }
    if (c != 0) out.push_back({Monomial(rest), c});
  }
  return Poly::from_terms(std::move(out));
}

} // namespace tdecomp
