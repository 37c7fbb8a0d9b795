#ifndef MOMENT_FORGE_UNIVARIATE_HPP
#define MOMENT_FORGE_UNIVARIATE_HPP

#include <algorithm>
#include <complex>
#include <utility>
#include <vector>

#include "moment_forge/error.hpp"
#include "moment_forge/scalar.hpp"

namespace mforge {

/// Dense univariate polynomial over Q, coefficients in ascending powers.
using RationalUPoly = std::vector<Rational>;

inline void trim(RationalUPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline RationalUPoly trimmed(RationalUPoly p) {
  trim(p);
  return p;
}

/// -1 for the zero polynomial.
inline int degree(const RationalUPoly& p) {
  RationalUPoly t = trimmed(p);
  return static_cast<int>(t.size()) - 1;
}

inline RationalUPoly derivative(const RationalUPoly& p) {
  RationalUPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Rational(p[i] * static_cast<long>(i)));
  trim(d);
  return d;
}

inline RationalUPoly make_monic(RationalUPoly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

/// Polynomial long division a = q b + r.
inline std::pair<RationalUPoly, RationalUPoly> divmod(RationalUPoly a, RationalUPoly b) {
  trim(a);
  trim(b);
  if (b.empty()) throw Error("variety", "univariate division by zero");
  if (a.size() < b.size()) return {{}, a};
  RationalUPoly q(a.size() - b.size() + 1, Rational(0));
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (sgn(a[i]) == 0) continue;
    const Rational f = a[i] / b.back();
    const std::size_t shift = i - (b.size() - 1);
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    a[i] = 0;
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline RationalUPoly exact_quotient(const RationalUPoly& a, const RationalUPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw Error("variety", "inexact univariate division");
  return q;
}

/// Monic gcd; gcd(0, 0) = 0.
inline RationalUPoly gcd(RationalUPoly a, RationalUPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RationalUPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

/// Yun's square-free decomposition: p = c * prod f_i^i with each f_i monic,
/// square-free and pairwise coprime. Returns (f_i, i) for non-constant f_i.
inline std::vector<std::pair<RationalUPoly, int>> squarefree_decomposition(const RationalUPoly& p) {
  std::vector<std::pair<RationalUPoly, int>> out;
  RationalUPoly f = trimmed(p);
  if (f.size() <= 1) return out;
  RationalUPoly fp = derivative(f);
  RationalUPoly a = gcd(f, fp);
  RationalUPoly b = exact_quotient(f, a);
  RationalUPoly c = exact_quotient(fp, a);
  RationalUPoly bp = derivative(b);
  RationalUPoly d = c;
  for (std::size_t i = 0; i < d.size() || i < bp.size(); ++i) {
    if (i >= d.size()) d.push_back(Rational(0));
    if (i < bp.size()) d[i] -= bp[i];
  }
  trim(d);
  for (int mult = 1; degree(b) > 0; ++mult) {
    RationalUPoly a_i = gcd(b, d);
    if (degree(a_i) > 0) out.emplace_back(make_monic(a_i), mult);
    b = exact_quotient(b, a_i);
    c = exact_quotient(d, a_i);
    bp = derivative(b);
    d = c;
    for (std::size_t i = 0; i < d.size() || i < bp.size(); ++i) {
      if (i >= d.size()) d.push_back(Rational(0));
      if (i < bp.size()) d[i] -= bp[i];
    }
    trim(d);
  }
  return out;
}

inline RationalUPoly squarefree_part(const RationalUPoly& p) {
  RationalUPoly f = trimmed(p);
  if (f.size() <= 1) return f;
  return make_monic(exact_quotient(f, gcd(f, derivative(f))));
}

inline Rational evaluate(const RationalUPoly& p, const Rational& x) {
  Rational acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline RationalUPoly multiply(const RationalUPoly& a, const RationalUPoly& b) {
  if (a.empty() || b.empty()) return {};
  RationalUPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

/// Double coefficients after dividing by the largest magnitude coefficient, so
/// that huge exact integers never overflow.
inline std::vector<Complex> to_normalized_complex(const RationalUPoly& p) {
  RationalUPoly t = trimmed(p);
  Rational big(0);
  for (const auto& c : t) big = std::max(big, Rational(abs(c)));
  std::vector<Complex> out;
  out.reserve(t.size());
  for (const auto& c : t) out.emplace_back(Rational(c / big).get_d(), 0.0);
  return out;
}

}  // namespace mforge

#endif  // MOMENT_FORGE_UNIVARIATE_HPP
