#ifndef MOMENT_FORGE_RESULTANT_HPP
#define MOMENT_FORGE_RESULTANT_HPP

#include <vector>

#include "moment_forge/dense.hpp"
#include "moment_forge/realify.hpp"
#include "moment_forge/univariate.hpp"

namespace mforge {

enum class Variable { x, y };

namespace detail {

/// Sylvester matrix of two univariate polynomials given by their coefficient
/// values (ascending), with formal degrees m = a.size()-1 and n = b.size()-1.
inline DenseMatrix<Rational> sylvester_matrix(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  const std::size_t m = a.size() - 1, n = b.size() - 1, size = m + n;
  DenseMatrix<Rational> s(size, size, Rational(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j <= m; ++j) s(r, r + j) = a[m - j];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= n; ++j) s(n + r, r + j) = b[n - j];
  return s;
}

/// Newton interpolation through (xs[i], ys[i]), returned in the monomial basis.
inline RationalUPoly interpolate(const std::vector<Rational>& xs, std::vector<Rational> ys) {
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - level]);
  RationalUPoly poly{ys[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    // poly = poly * (x - xs[i]) + ys[i]
    RationalUPoly next(poly.size() + 1, Rational(0));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= poly[j] * xs[i];
    }
    next[0] += ys[i];
    poly = std::move(next);
  }
  trim(poly);
  return poly;
}

}  // namespace detail

/// Determinant of the Sylvester matrix of f and g with respect to the
/// eliminated variable; a polynomial in the other one. Computed exactly by
/// evaluation at enough integer abscissae and interpolation.
inline RationalUPoly sylvester_resultant(const RealPolynomial& f_in, const RealPolynomial& g_in,
                                         Variable eliminate = Variable::y) {
  const RealPolynomial f = eliminate == Variable::y ? f_in : f_in.swap_xy();
  const RealPolynomial g = eliminate == Variable::y ? g_in : g_in.swap_xy();
  if (f.is_zero() || g.is_zero()) throw Error("variety", "resultant of a zero polynomial");
  const int m = f.degree_y(), n = g.degree_y();
  if (m < 1 || n < 1) throw Error("variety", "resultant needs positive degree in the eliminated variable");
  const auto fc = f.coefficients_in_y();
  const auto gc = g.coefficients_in_y();
  int df = 0, dg = 0;
  for (const auto& c : fc) df = std::max(df, degree(c));
  for (const auto& c : gc) dg = std::max(dg, degree(c));
  const int bound = n * df + m * dg;
  std::vector<Rational> xs, ys;
  for (int t = 0; t <= bound; ++t) {
    const Rational xv(t);
    std::vector<Rational> a, b;
    for (const auto& c : fc) a.push_back(evaluate(c, xv));
    for (const auto& c : gc) b.push_back(evaluate(c, xv));
    xs.push_back(xv);
    ys.push_back(determinant(detail::sylvester_matrix(a, b)));
  }
  return detail::interpolate(xs, ys);
}

}  // namespace mforge

#endif  // MOMENT_FORGE_RESULTANT_HPP
