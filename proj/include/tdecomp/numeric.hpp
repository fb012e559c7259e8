#pragma once
// Floating-point helpers for the verification oracles: complex evaluation,
// univariate roots (companion matrix eigenvalues plus Newton polishing) and
// Gauss-Newton refinement of approximate solutions.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "tdecomp/poly.hpp"

namespace tdecomp {

using Complex = std::complex<double>;
using Point = std::map<Var, Complex>;

inline Complex eval_monomial(const Monomial& m, const Point& pt) {
  Complex r(1.0);
  for (const auto& [v, e] : m.factors()) {
    auto it = pt.find(v);
    if (it == pt.end()) throw std::out_of_range("point has no value for variable " + std::to_string(v));
    r *= std::pow(it->second, static_cast<int>(e));
  }
  return r;
}

inline Complex eval(const Poly& p, const Point& pt) {
  Complex s(0.0);
  for (const auto& t : p.terms()) s += t.coef.get_d() * eval_monomial(t.mono, pt);
  return s;
}

// |p(pt)| relative to the size of its terms at pt (at least 1).
inline double residual(const Poly& p, const Point& pt) {
  Complex s(0.0);
  double scale = 1.0;
  for (const auto& t : p.terms()) {
    Complex v = t.coef.get_d() * eval_monomial(t.mono, pt);
    s += v;
    scale += std::abs(v);
  }
  return std::abs(s) / scale;
}

// Coefficients (ascending) of p as a univariate polynomial in v, every other
// variable taken from pt.
inline std::vector<Complex> eval_univariate(const Poly& p, Var v, const Point& pt) {
  std::vector<Complex> c(p.degree(v) + 1, Complex(0.0));
  for (const auto& t : p.terms()) {
    auto [d, rest] = t.mono.extract(v);
    c[d] += t.coef.get_d() * eval_monomial(rest, pt);
  }
  return c;
}

inline Complex horner(const std::vector<Complex>& c, Complex x) {
  Complex r(0.0);
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

// Newton iteration on the univariate polynomial with coefficients c.
inline Complex polish_root(const std::vector<Complex>& c, Complex x, int iters = 4) {
  std::vector<Complex> dc;
  for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * double(i));
  for (int it = 0; it < iters; ++it) {
    Complex d = horner(dc, x);
    if (std::abs(d) == 0) break;
    Complex step = horner(c, x) / d;
    if (!std::isfinite(std::abs(step))) break;
    x -= step;
    if (std::abs(step) <= 1e-16 * (1 + std::abs(x))) break;
  }
  return x;
}

// Leading coefficients with |c| <= rel * max|c| are dropped first.
inline std::vector<Complex> univariate_roots(std::vector<Complex> c, double rel = 1e-13) {
  double mx = 0;
  for (auto z : c) mx = std::max(mx, std::abs(z));
  if (mx == 0) return {};
  while (!c.empty() && std::abs(c.back()) <= rel * mx) c.pop_back();
  if (c.size() <= 1) return {};
  const std::size_t n = c.size() - 1;
  std::vector<Complex> roots;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  for (std::size_t i = 0; i < n; ++i) roots.push_back(polish_root(c, es.eigenvalues()[i]));
  return roots;
}

struct NewtonResult {
  Point point;
  bool converged = false; // the last step was negligible
};

// Gauss-Newton with minimum-norm steps on the square or non-square system
// polys(vars) = 0. Iterates drifting towards infinity never converge.
inline NewtonResult newton_refine(const std::vector<Poly>& polys, const std::vector<Var>& vars, Point pt,
                                  int max_iter = 80) {
  const auto m = static_cast<Eigen::Index>(polys.size());
  const auto n = static_cast<Eigen::Index>(vars.size());
  if (m == 0 || n == 0) return {pt, true};
  std::vector<std::vector<Poly>> jac(polys.size());
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (Var v : vars) jac[i].push_back(polys[i].derivative(v));
  Eigen::MatrixXcd J(m, n);
  Eigen::VectorXcd F(m);
  for (int it = 0; it < max_iter; ++it) {
    for (Eigen::Index i = 0; i < m; ++i) {
      F(i) = eval(polys[i], pt);
      for (Eigen::Index j = 0; j < n; ++j) J(i, j) = eval(jac[i][j], pt);
    }
    Eigen::VectorXcd step = J.completeOrthogonalDecomposition().solve(F);
    if (!step.allFinite()) break;
    double size = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      pt[vars[j]] -= step(j);
      size = std::max(size, std::abs(step(j)) / (1.0 + std::abs(pt[vars[j]])));
    }
    if (size < 1e-13) return {pt, true};
  }
  return {pt, false};
}

inline double distance(const Point& a, const Point& b) {
  double d = 0;
  for (const auto& [v, z] : a) {
    auto it = b.find(v);
    d = std::max(d, it == b.end() ? INFINITY : std::abs(z - it->second));
  }
  return d;
}

} // namespace tdecomp
