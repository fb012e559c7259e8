#pragma once
// Independent correctness oracles: numeric sampling of chain components,
// pseudo-remainder membership in sat(T), a brute-force solver for small
// systems, and check_decomposition tying them together.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tdecomp/algebraic.hpp"
#include "tdecomp/diff_decomp.hpp"
#include "tdecomp/numeric.hpp"

namespace tdecomp {

struct VerifyConfig {
  std::size_t samples = 50;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;         // residual accepted for input equations
  double cascade_tolerance = 1e-9; // residual required for chain equations
  bool backward = true;
  unsigned jet_degree = 4;  // differential: degree of the parameter jets
  unsigned jet_checks = 1;  // differential: input derivatives checked beyond order 0
};

struct VerifyReport {
  double forward = 1.0;
  double backward = 1.0;
  double residual_max = 0.0;
  std::uint64_t seed = 0;
  std::size_t forward_points = 0;
  std::size_t backward_points = 0;
  std::size_t empty_chains = 0;  // chains for which sampling found no point
  bool backward_skipped = false; // brute-force solver refused the system
  bool pass() const { return forward == 1.0 && backward == 1.0; }
};

struct BruteForceOptions {
  std::uint64_t seed = 0;
  std::size_t free_samples = 2;  // values tried per free variable
  std::size_t newton_starts = 48;
  std::size_t max_points = 64;
  // Converged Newton iterates reach rounding level; iterates drifting to a
  // solution at infinity stall around 1e-7..1e-10 with large coordinates.
  double tolerance = 1e-10;
  double max_abs = 1e3;
  std::size_t max_vars = 3;
  unsigned max_degree = 4;
};

namespace detail {

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  int a = 0;
  while (a == 0) a = num(rng);
  return Rational(a, den(rng));
}

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  return {g(rng), g(rng)};
}

inline double relative_size(const std::vector<Complex>& c, std::size_t i) {
  double mx = 0;
  for (auto z : c) mx = std::max(mx, std::abs(z));
  return mx == 0 ? 0 : std::abs(c[i]) / mx;
}

} // namespace detail

// Points of zero(chain / D): random rational parameters, leaders solved one
// at a time. Every returned point satisfies the chain to cascade_tolerance.
inline std::vector<Point> sample_chain_points(const std::vector<Poly>& chain, const Poly& D,
                                              const std::vector<Var>& params, std::size_t n, std::uint64_t seed,
                                              const VerifyConfig& cfg = {}) {
  auto sorted = detail::sort_by_leader(chain);
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  const std::size_t budget = 20 * n + 100;
  for (std::size_t attempt = 0; attempt < budget && out.size() < n; ++attempt) {
    Point pt;
    for (Var v : params) pt[v] = detail::random_rational(rng).get_d();
    bool ok = true;
    for (const auto& t : sorted) {
      Var v = t.main_var();
      auto c = eval_univariate(t, v, pt);
      if (detail::relative_size(c, c.size() - 1) < 1e-9) {
        ok = false;
        break;
      }
      auto roots = univariate_roots(c);
      if (roots.empty()) {
        ok = false;
        break;
      }
      pt[v] = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)];
    }
    if (!ok || residual(D, pt) < cfg.tolerance) continue;
    for (const auto& t : sorted) ok = ok && residual(t, pt) <= cfg.cascade_tolerance;
    if (ok) out.push_back(std::move(pt));
  }
  if (out.empty()) throw NoPointsFound();
  return out;
}

inline std::vector<Point> sample_chain_points(const Chain& c, std::size_t n, std::uint64_t seed,
                                              const VerifyConfig& cfg = {}) {
  return sample_chain_points(c.polys, c.ineq_product, c.params, n, seed, cfg);
}

// f in sat(T) when its iterated pseudo-remainder is zero (one-sided).
inline bool sat_membership(const Poly& f, const std::vector<Poly>& chain) {
  auto sorted = detail::sort_by_leader(chain);
  Poly r = f;
  for (std::size_t j = sorted.size(); j-- > 0 && !r.is_zero();) {
    Var v = sorted[j].main_var();
    if (r.degree(v) >= sorted[j].degree(v)) r = pseudo_remainder(r, sorted[j], v);
  }
  return r.is_zero();
}

inline bool sat_membership(const Poly& f, const Chain& c) { return sat_membership(f, c.polys); }

namespace detail {

struct ResultantBlowup {};

// Exact elimination from the greatest variable down, then numeric
// back-substitution. Variables left unconstrained get random values.
inline std::vector<Point> solve_by_resultants(std::vector<Poly> polys, std::vector<Var> vars, std::mt19937_64& rng,
                                              const BruteForceOptions& opt) {
  std::vector<Poly> clean;
  for (auto& p : polys) {
    if (p.is_zero()) continue;
    if (p.is_constant()) return {};
    insert_sorted_unique(clean, squarefree_part(p));
  }
  if (vars.empty()) return {Point{}};
  Var v = vars.back();
  std::vector<Var> lower(vars.begin(), vars.end() - 1);
  std::vector<Poly> with, without;
  for (auto& p : clean) (p.contains(v) ? with : without).push_back(p);

  auto free_values = [&](const std::vector<Point>& sub) {
    std::vector<Point> out;
    for (const auto& s : sub)
      for (std::size_t i = 0; i < opt.free_samples; ++i) {
        Point q = s;
        q[v] = random_rational(rng).get_d();
        out.push_back(std::move(q));
      }
    return out;
  };
  if (with.empty()) return free_values(solve_by_resultants(without, lower, rng, opt));

  if (with.size() >= 2) {
    Poly g = with[0];
    for (std::size_t i = 1; i < with.size(); ++i) g = gcd(g, with[i]);
    if (g.degree(v) > 0) {
      std::vector<Poly> a = without, b = without;
      a.push_back(g);
      for (const auto& w : with) b.push_back(*divide_exact(w, g));
      auto sa = solve_by_resultants(a, vars, rng, opt);
      auto sb = solve_by_resultants(b, vars, rng, opt);
      sa.insert(sa.end(), sb.begin(), sb.end());
      return sa;
    }
  }

  std::vector<Poly> elim = without;
  for (std::size_t i = 0; i < with.size(); ++i)
    for (std::size_t j = i + 1; j < with.size(); ++j) {
      Poly r = resultant(with[i], with[j], v);
      if (r.total_degree() > 40) throw ResultantBlowup();
      elim.push_back(r);
    }
  auto sub = solve_by_resultants(elim, lower, rng, opt);

  std::vector<Point> out;
  for (const auto& s : sub) {
    const std::vector<Complex>* best = nullptr;
    std::vector<std::vector<Complex>> us;
    for (const auto& w : with) us.push_back(eval_univariate(w, v, s));
    for (const auto& u : us) {
      double mx = 0, lead = 0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        mx = std::max(mx, std::abs(u[i]));
        if (i > 0) lead = std::max(lead, std::abs(u[i]));
      }
      if (lead <= 1e-9 * std::max(mx, 1.0)) continue;
      if (!best || u.size() < best->size()) best = &u;
    }
    if (!best) {
      auto fv = free_values({s});
      out.insert(out.end(), fv.begin(), fv.end());
      continue;
    }
    for (Complex r : univariate_roots(*best)) {
      Point q = s;
      q[v] = r;
      bool ok = true;
      for (const auto& w : with) ok = ok && residual(w, q) <= 1e-4;
      if (ok) out.push_back(std::move(q));
    }
  }
  return out;
}

} // namespace detail

// Numeric solutions of H over the complex numbers. Zero-dimensional systems
// are solved by resultant elimination; Gauss-Newton from random starts adds
// generic points of positive-dimensional components. Every returned point
// satisfies H to opt.tolerance.
inline std::vector<Point> brute_force_solutions(const std::vector<Poly>& H, const std::vector<Var>& vars,
                                                const BruteForceOptions& opt = {}) {
  if (vars.size() > opt.max_vars) throw TooLarge();
  for (const auto& p : H)
    if (p.total_degree() > opt.max_degree) throw TooLarge();
  std::mt19937_64 rng(opt.seed);

  std::vector<Point> candidates;
  try {
    candidates = detail::solve_by_resultants(H, vars, rng, opt);
  } catch (const detail::ResultantBlowup&) {
    candidates.clear();
  }
  for (std::size_t i = 0; i < opt.newton_starts; ++i) {
    Point p;
    for (Var v : vars) p[v] = detail::random_complex(rng, 1.5);
    candidates.push_back(std::move(p));
  }

  std::vector<Point> out;
  for (auto& c : candidates) {
    for (Var v : vars)
      if (!c.count(v)) c[v] = detail::random_complex(rng);
    auto [q, ok] = newton_refine(H, vars, c);
    for (const auto& [v, z] : q) ok = ok && std::abs(z) <= opt.max_abs;
    for (const auto& h : H) ok = ok && residual(h, q) <= opt.tolerance;
    if (!ok) continue;
    bool dup = false;
    for (const auto& o : out) dup = dup || distance(o, q) < 1e-6;
    if (!dup) out.push_back(std::move(q));
    if (out.size() >= opt.max_points) break;
  }
  return out;
}

// pt lies in zero(sat(chain)): projecting pt onto zero(chain) (nearest root
// of each element in turn, parameters fixed) moves it less than 1e-4 and D
// does not vanish there, or D vanishes and nearby points of zero(chain / D)
// approach pt when the parameters are perturbed. Brute-force points on
// non-reduced components are only accurate to about the square root of their
// residual, hence the projection instead of a residual test.
inline bool chain_captures(const std::vector<Poly>& chain, const Poly& D, const std::vector<Var>& params,
                           const Point& pt, double tol = 1e-6, std::uint64_t seed = 0) {
  auto sorted = detail::sort_by_leader(chain);
  auto project = [&](Point q) -> std::optional<Point> {
    for (const auto& t : sorted) {
      Var v = t.main_var();
      auto c = eval_univariate(t, v, q);
      auto roots = univariate_roots(c);
      if (roots.empty()) return std::nullopt;
      Complex best = roots[0];
      for (auto r : roots)
        if (std::abs(r - pt.at(v)) < std::abs(best - pt.at(v))) best = r;
      // Eigenvalues of clustered roots are inaccurate; Newton from pt itself
      // usually lands on the right one.
      Complex alt = polish_root(c, pt.at(v), 30);
      if (std::isfinite(std::abs(alt)) && std::abs(horner(c, alt)) <= std::abs(horner(c, best))) best = alt;
      q[v] = best;
    }
    return q;
  };
  if (auto q = project(pt); q && distance(*q, pt) < 1e-4 && residual(D, *q) > tol) return true;
  if (params.empty()) return false;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 3; ++attempt) {
    Point q0 = pt;
    for (Var v : params) q0[v] += 1e-8 * detail::random_complex(rng);
    auto q = project(q0);
    if (q && eval(D, *q) != Complex(0.0) && distance(*q, pt) < 1e-2) return true;
  }
  return false;
}

inline bool chain_captures(const Chain& c, const Point& pt, double tol = 1e-6) {
  return chain_captures(c.polys, c.ineq_product, c.params, pt, tol);
}

inline VerifyReport check_decomposition(const std::vector<Poly>& H, const std::vector<Chain>& chains,
                                        const std::vector<Var>& vars, const VerifyConfig& cfg = {}) {
  VerifyReport rep;
  rep.seed = cfg.seed;
  std::size_t good = 0;
  for (std::size_t q = 0; q < chains.size(); ++q) {
    std::vector<Point> pts;
    try {
      pts = sample_chain_points(chains[q], cfg.samples, cfg.seed + 1000003 * (q + 1), cfg);
    } catch (const NoPointsFound&) {
      ++rep.empty_chains;
      continue;
    }
    for (const auto& pt : pts) {
      double r = 0;
      for (const auto& h : H) r = std::max(r, residual(h, pt));
      rep.residual_max = std::max(rep.residual_max, r);
      ++rep.forward_points;
      if (r <= cfg.tolerance) ++good;
    }
  }
  if (rep.forward_points) rep.forward = double(good) / double(rep.forward_points);

  if (cfg.backward) {
    std::vector<Point> sols;
    try {
      BruteForceOptions bo;
      bo.seed = cfg.seed;
      sols = brute_force_solutions(H, vars, bo);
    } catch (const TooLarge&) {
      rep.backward_skipped = true;
    }
    std::size_t captured = 0;
    for (const auto& s : sols) {
      bool hit = false;
      for (const auto& c : chains) hit = hit || chain_captures(c, s, cfg.tolerance);
      captured += hit;
    }
    rep.backward_points = sols.size();
    if (!sols.empty()) rep.backward = double(captured) / double(sols.size());
  }
  return rep;
}

// Differential ideal membership: partial reduction by the chain, then the
// algebraic pseudo-remainder test (one-sided).
inline bool dsat_membership(const Poly& f, const std::vector<Poly>& chain) {
  return sat_membership(partial_reduce(f, chain), chain);
}

namespace detail {

inline std::size_t dchain_num_classes(const DiffChain& c) {
  std::size_t n = 0;
  for (unsigned b : c.params) n = std::max<std::size_t>(n, b);
  for (const auto& p : c.polys) n = std::max<std::size_t>(n, diff_class(p));
  return n;
}

} // namespace detail

// Taylor data at t = 0 of power-series solutions of zero(chain / D): the
// point maps y_i^(j) to the j-th derivative at 0. Parameters get random
// polynomial jets of degree cfg.jet_degree; every chain leader gets random
// initial values below its order, a random root for the leader itself, and
// higher derivatives from the prolonged chain (linear in the new leader with
// the separant as coefficient). Every class has derivatives up to at least
// `order` available. Points with a small initial, separant or D are rejected.
inline std::vector<Point> sample_dchain_points(const DiffChain& chain, unsigned order, std::size_t n,
                                               std::uint64_t seed, const VerifyConfig& cfg = {}) {
  auto sorted = detail::sort_by_leader(chain.polys);
  const std::size_t num = detail::dchain_num_classes(chain);
  std::vector<unsigned> need(num + 1, order);
  std::vector<const Poly*> by_class(num + 1, nullptr);
  for (const auto& t : sorted) by_class[diff_class(t)] = &t;
  for (std::size_t c = num; c >= 1; --c) {
    if (!by_class[c]) continue;
    const Poly& t = *by_class[c];
    unsigned o = diff_order(leader(t));
    need[c] = std::max(need[c], o);
    unsigned k = need[c] - o;
    for (Var v : t.variables())
      if (diff_base(v) < c) need[diff_base(v)] = std::max(need[diff_base(v)], diff_order(v) + k);
  }
  // Prolongations T^(k), one list per class.
  std::vector<std::vector<Poly>> prolonged(num + 1);
  for (std::size_t c = 1; c <= num; ++c) {
    if (!by_class[c]) continue;
    unsigned o = diff_order(leader(*by_class[c]));
    prolonged[c].push_back(*by_class[c]);
    for (unsigned k = o + 1; k <= need[c]; ++k) prolonged[c].push_back(differentiate(prolonged[c].back()));
  }

  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  const std::size_t budget = 20 * n + 100;
  for (std::size_t attempt = 0; attempt < budget && out.size() < n; ++attempt) {
    Point pt;
    bool ok = true;
    for (std::size_t c = 1; c <= num && ok; ++c) {
      if (!by_class[c]) {
        double fact = 1;
        for (unsigned k = 0; k <= need[c]; ++k) {
          if (k > 0) fact *= k;
          pt[diff_var(c, k)] = k <= cfg.jet_degree ? fact * detail::random_rational(rng).get_d() : 0.0;
        }
        continue;
      }
      const Poly& t = *by_class[c];
      const Var ld = leader(t);
      const unsigned o = diff_order(ld);
      for (unsigned k = 0; k < o; ++k) pt[diff_var(c, k)] = detail::random_rational(rng).get_d();
      auto coeffs = eval_univariate(t, ld, pt);
      if (detail::relative_size(coeffs, coeffs.size() - 1) < 1e-9) {
        ok = false;
        break;
      }
      auto roots = univariate_roots(coeffs);
      if (roots.empty()) {
        ok = false;
        break;
      }
      pt[ld] = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)];
      if (residual(separant(t), pt) < cfg.tolerance) {
        ok = false;
        break;
      }
      for (std::size_t k = 1; k < prolonged[c].size(); ++k) {
        Var v = diff_var(c, o + k);
        auto lin = eval_univariate(prolonged[c][k], v, pt);
        pt[v] = -lin[0] / lin[1];
      }
    }
    if (!ok || residual(chain.ineq_product, pt) < cfg.tolerance) continue;
    for (std::size_t c = 1; c <= num && ok; ++c)
      for (const auto& p : prolonged[c]) ok = ok && residual(p, pt) <= cfg.cascade_tolerance;
    if (ok) out.push_back(std::move(pt));
  }
  if (out.empty()) throw NoPointsFound();
  return out;
}

// Forward: sampled series solutions of every chain satisfy H and its first
// cfg.jet_checks derivatives. Backward runs only for order-0 input, where it
// is the algebraic check on the order-0 chains.
inline VerifyReport check_ddecomposition(const std::vector<Poly>& H, const std::vector<DiffChain>& chains,
                                         std::size_t num_classes, const VerifyConfig& cfg = {}) {
  VerifyReport rep;
  rep.seed = cfg.seed;
  std::vector<Poly> checks;
  unsigned order = 0;
  for (const auto& h : H) {
    Poly d = h;
    for (unsigned k = 0; k <= cfg.jet_checks; ++k) {
      checks.push_back(d);
      order = std::max(order, max_order(d));
      d = differentiate(d);
    }
  }
  std::size_t good = 0;
  for (std::size_t q = 0; q < chains.size(); ++q) {
    DiffChain c = chains[q];
    for (unsigned b = 1; b <= num_classes; ++b) {
      bool led = false;
      for (const auto& p : c.polys) led = led || diff_class(p) == b;
      if (!led && std::find(c.params.begin(), c.params.end(), b) == c.params.end()) c.params.push_back(b);
    }
    std::vector<Point> pts;
    try {
      pts = sample_dchain_points(c, order, cfg.samples, cfg.seed + 1000003 * (q + 1), cfg);
    } catch (const NoPointsFound&) {
      ++rep.empty_chains;
      continue;
    }
    for (const auto& pt : pts) {
      double r = 0;
      for (const auto& h : checks) r = std::max(r, residual(h, pt));
      rep.residual_max = std::max(rep.residual_max, r);
      ++rep.forward_points;
      if (r <= cfg.tolerance) ++good;
    }
  }
  if (rep.forward_points) rep.forward = double(good) / double(rep.forward_points);

  bool order_zero = true;
  for (const auto& h : H) order_zero = order_zero && max_order(h) == 0;
  for (const auto& c : chains)
    for (const auto& p : c.polys) order_zero = order_zero && max_order(p) == 0;
  if (!cfg.backward) return rep;
  if (!order_zero) {
    rep.backward_skipped = true;
    return rep;
  }
  std::vector<Var> vars;
  for (unsigned b = 1; b <= num_classes; ++b) vars.push_back(diff_var(b, 0));
  std::vector<Chain> algebraic;
  for (const auto& c : chains) {
    Chain a;
    a.polys = c.polys;
    a.ineq_product = c.ineq_product;
    a.params = detail::chain_params(a.polys, vars);
    algebraic.push_back(std::move(a));
  }
  VerifyConfig alg = cfg;
  alg.samples = 0;
  auto back = check_decomposition(H, algebraic, vars, alg);
  rep.backward = back.backward;
  rep.backward_points = back.backward_points;
  rep.backward_skipped = back.backward_skipped;
  return rep;
}

} // namespace tdecomp
