#ifndef MOMENT_FORGE_POLYNOMIAL_HPP
#define MOMENT_FORGE_POLYNOMIAL_HPP

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "moment_forge/error.hpp"
#include "moment_forge/monomial.hpp"
#include "moment_forge/scalar.hpp"

namespace mforge {

/// Sparse polynomial in the formal indeterminates z and w over an exact or
/// floating complex scalar. Terms are kept in descending deglex order, so the
/// first term is the leading one. No zero coefficient is ever stored.
template <Scalar S>
class Polynomial {
public:
  using scalar_type = S;
  using TermMap = std::map<Monomial, S, std::greater<>>;

  Polynomial() = default;
  explicit Polynomial(const S& constant) { add_term({0, 0}, constant); }

  static Polynomial term(const Monomial& m, const S& c = S(1)) {
    Polynomial p;
    p.add_term(m, c);
    return p;
  }
  static Polynomial z() { return term({0, 1}); }
  static Polynomial w() { return term({1, 0}); }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw Error("poly", "zero polynomial has no leading monomial");
    return terms_.begin()->first;
  }
  const S& leading_coefficient() const {
    if (terms_.empty()) throw Error("poly", "zero polynomial has no leading coefficient");
    return terms_.begin()->second;
  }

  S coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(const Monomial& m, const S& c) {
    if (is_zero_scalar(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  /// Drops the term at m regardless of its value.
  void erase(const Monomial& m) { terms_.erase(m); }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const S& s) {
    if (is_zero_scalar(s)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      it = is_zero_scalar(it->second) ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= S(-1); }
  friend Polynomial operator*(Polynomial a, const S& s) { return a *= s; }
  friend Polynomial operator*(const S& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// (c m) * p
  Polynomial times_term(const Monomial& m, const S& c) const {
    Polynomial out;
    for (const auto& [mp, cp] : terms_) out.add_term(mp * m, cp * c);
    return out;
  }

private:
  static bool is_zero_scalar(const S& c) { return mforge::is_zero(c); }
  TermMap terms_;
};

using ExactPolynomial = Polynomial<GaussianRational>;
using ApproxPolynomial = Polynomial<Complex>;
using AnyPolynomial = std::variant<ExactPolynomial, ApproxPolynomial>;

template <Scalar To, Scalar From>
Polynomial<To> convert(const Polynomial<From>& p) {
  if constexpr (std::same_as<To, From>) {
    return p;
  } else {
    Polynomial<To> out;
    for (const auto& [m, c] : p.terms()) out.add_term(m, scalar_cast<To>(c));
    return out;
  }
}

template <Scalar To>
Polynomial<To> convert(const AnyPolynomial& p) {
  return std::visit([](const auto& q) { return convert<To>(q); }, p);
}

/// p-bar: conjugate every coefficient and swap the exponents of z and w.
template <Scalar S>
Polynomial<S> conjugate_poly(const Polynomial<S>& p) {
  Polynomial<S> out;
  for (const auto& [m, c] : p.terms()) out.add_term(m.swapped(), conj(c));
  return out;
}

/// d^2 p / dz dw.
template <Scalar S>
Polynomial<S> mixed_partial(const Polynomial<S>& p) {
  Polynomial<S> out;
  for (const auto& [m, c] : p.terms()) {
    if (m.a == 0 || m.b == 0) continue;
    out.add_term({m.a - 1, m.b - 1}, c * S(static_cast<long>(m.a) * m.b));
  }
  return out;
}

/// True iff no term mixes z and w, i.e. p(z, conj z) = f(z) + conj(g(z)).
template <Scalar S>
bool is_harmonic(const Polynomial<S>& p) {
  for (const auto& [m, c] : p.terms())
    if (m.a > 0 && m.b > 0) return false;
  return true;
}

template <Scalar S>
Polynomial<S> monic(const Polynomial<S>& p) {
  if (p.is_zero()) throw Error("poly", "cannot normalise the zero polynomial");
  return p * (S(1) / p.leading_coefficient());
}

template <Scalar S>
S power(const S& x, int n) {
  S r(1);
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

/// Substitutes (z, w) <- (zv, wv).
template <Scalar S, Scalar T>
promote_t<S, T> evaluate(const Polynomial<S>& p, const T& zv, const T& wv) {
  using R = promote_t<S, T>;
  const R zr = scalar_cast<R>(zv), wr = scalar_cast<R>(wv);
  int max_a = 0, max_b = 0;
  for (const auto& [m, c] : p.terms()) {
    max_a = std::max(max_a, m.a);
    max_b = std::max(max_b, m.b);
  }
  std::vector<R> zp(max_b + 1, R(1)), wp(max_a + 1, R(1));
  for (int i = 1; i <= max_b; ++i) zp[i] = zp[i - 1] * zr;
  for (int i = 1; i <= max_a; ++i) wp[i] = wp[i - 1] * wr;
  R acc(0);
  for (const auto& [m, c] : p.terms()) acc += scalar_cast<R>(c) * wp[m.a] * zp[m.b];
  return acc;
}

/// sum |c| * max(1,|z|)^deg, the natural size of p near a point of modulus |z|.
template <Scalar S>
double evaluation_scale(const Polynomial<S>& p, double modulus) {
  const double r = std::max(1.0, modulus);
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) s += magnitude(c) * std::pow(r, m.degree());
  return s;
}

template <Scalar S>
double max_coefficient(const Polynomial<S>& p) {
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) s = std::max(s, magnitude(c));
  return s;
}

template <Scalar S>
struct DivisionResult {
  std::vector<Polynomial<S>> quotients;
  Polynomial<S> remainder;
};

/// Multivariate division: f = sum q_i g_i + r, with no monomial of r divisible
/// by any LM(g_i). The largest remaining monomial is reduced at every step,
/// always by the first divisor in list order whose leading monomial divides it.
template <Scalar S>
DivisionResult<S> divide(const Polynomial<S>& f, std::span<const Polynomial<S>> divisors) {
  for (const auto& g : divisors)
    if (g.is_zero()) throw Error("poly", "division by the zero polynomial");
  DivisionResult<S> out;
  out.quotients.resize(divisors.size());
  Polynomial<S> p = f;
  while (!p.is_zero()) {
    const Monomial lm = p.leading_monomial();
    const S lc = p.leading_coefficient();
    bool reduced = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const auto& g = divisors[i];
      if (!g.leading_monomial().divides(lm)) continue;
      const Monomial shift = quotient(lm, g.leading_monomial());
      const S factor = lc / g.leading_coefficient();
      out.quotients[i].add_term(shift, factor);
      p -= g.times_term(shift, factor);
      p.erase(lm);  // cancelled exactly in exact mode; forced in floating mode
      reduced = true;
      break;
    }
    if (!reduced) {
      out.remainder.add_term(lm, lc);
      p.erase(lm);
    }
  }
  return out;
}

template <Scalar S>
DivisionResult<S> divide(const Polynomial<S>& f, const std::vector<Polynomial<S>>& divisors) {
  return divide(f, std::span<const Polynomial<S>>(divisors));
}

}  // namespace mforge

#endif  // MOMENT_FORGE_POLYNOMIAL_HPP
