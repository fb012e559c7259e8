#pragma once

#include <ostream>
#include <random>
#include <string>

#include "tdecomp/text.hpp"

namespace tdtest {

using namespace tdecomp;

inline const VarOrder& xyz() {
  static const VarOrder ord = VarOrder::algebraic({"x", "y", "z", "w"});
  return ord;
}

inline Poly P(const std::string& s, const VarOrder& ord = xyz()) { return parse_poly(s, ord); }

inline Poly random_poly(std::mt19937_64& rng, const std::vector<Var>& vars, unsigned max_deg, int max_coef,
                        unsigned max_terms) {
  std::uniform_int_distribution<unsigned> nterms(1, max_terms);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::uniform_int_distribution<int> coef(-max_coef, max_coef);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  Poly p;
  unsigned n = nterms(rng);
  for (unsigned t = 0; t < n; ++t) {
    unsigned d = deg(rng);
    std::vector<Monomial::Factor> f;
    for (unsigned i = 0; i < d; ++i) f.emplace_back(vars[pick(rng)], 1);
    int c = coef(rng);
    if (c == 0) c = 1;
    p += Poly::monomial(Monomial(f), c);
  }
  return p;
}

} // namespace tdtest

namespace tdecomp {
inline void PrintTo(const Poly& p, std::ostream* os) { *os << to_string(p, tdtest::xyz()); }
} // namespace tdecomp
