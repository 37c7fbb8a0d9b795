#ifndef MOMENT_FORGE_REALIFY_HPP
#define MOMENT_FORGE_REALIFY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "moment_forge/polynomial.hpp"
#include "moment_forge/univariate.hpp"

namespace mforge {

/// Polynomial with rational coefficients in commuting real indeterminates x, y.
class RealPolynomial {
public:
  using Exponents = std::pair<int, int>;  // (deg x, deg y)

  RealPolynomial() = default;

  static RealPolynomial x() { return from_term({1, 0}, Rational(1)); }
  static RealPolynomial y() { return from_term({0, 1}, Rational(1)); }
  static RealPolynomial from_term(Exponents e, const Rational& c) {
    RealPolynomial p;
    p.add_term(e, c);
    return p;
  }

  void add_term(Exponents e, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree_x() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first);
    return d;
  }
  int degree_y() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.second);
    return d;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
  }

  /// Coefficients as polynomials in x, indexed by the power of y.
  std::vector<RationalUPoly> coefficients_in_y() const {
    std::vector<RationalUPoly> out(static_cast<std::size_t>(std::max(0, degree_y() + 1)));
    for (const auto& [e, c] : terms_) {
      auto& slot = out[static_cast<std::size_t>(e.second)];
      if (slot.size() <= static_cast<std::size_t>(e.first)) slot.resize(e.first + 1, Rational(0));
      slot[e.first] += c;
    }
    return out;
  }

  RealPolynomial swap_xy() const {
    RealPolynomial out;
    for (const auto& [e, c] : terms_) out.add_term({e.second, e.first}, c);
    return out;
  }

  RealPolynomial partial_x() const {
    RealPolynomial out;
    for (const auto& [e, c] : terms_)
      if (e.first > 0) out.add_term({e.first - 1, e.second}, Rational(c * e.first));
    return out;
  }
  RealPolynomial partial_y() const {
    RealPolynomial out;
    for (const auto& [e, c] : terms_)
      if (e.second > 0) out.add_term({e.first, e.second - 1}, Rational(c * e.second));
    return out;
  }

  double evaluate(double xv, double yv) const {
    long double acc = 0;
    for (const auto& [e, c] : terms_)
      acc += static_cast<long double>(c.get_d()) * std::pow(static_cast<long double>(xv), e.first) *
             std::pow(static_cast<long double>(yv), e.second);
    return static_cast<double>(acc);
  }

  /// sum |c| max(1,|x|)^i max(1,|y|)^j
  double scale(double xv, double yv) const {
    const double rx = std::max(1.0, std::fabs(xv)), ry = std::max(1.0, std::fabs(yv));
    double s = 0;
    for (const auto& [e, c] : terms_) s += std::fabs(c.get_d()) * std::pow(rx, e.first) * std::pow(ry, e.second);
    return s;
  }

  friend bool operator==(const RealPolynomial&, const RealPolynomial&) = default;

  friend RealPolynomial operator+(RealPolynomial a, const RealPolynomial& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend RealPolynomial operator-(RealPolynomial a, const RealPolynomial& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, Rational(-c));
    return a;
  }
  friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
    RealPolynomial out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        out.add_term({ea.first + eb.first, ea.second + eb.second}, Rational(ca * cb));
    return out;
  }

private:
  std::map<Exponents, Rational> terms_;
};

inline std::string to_string(const RealPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mon;
    if (e.first > 0) mon += e.first == 1 ? "x" : "x^" + std::to_string(e.first);
    if (e.second > 0) mon += e.second == 1 ? "y" : "y^" + std::to_string(e.second);
    const Rational mag = abs(c);
    std::string term = mon.empty() ? mag.get_str() : (mag == 1 ? mon : mag.get_str() + mon);
    if (out.empty()) out = (sgn(c) < 0 ? "-" : "") + term;
    else out += (sgn(c) < 0 ? " - " : " + ") + term;
  }
  return out;
}

/// Real and imaginary parts of p(x + iy, x - iy), each with rational
/// coefficients. Floating coefficients are taken at their exact binary value.
inline std::pair<RealPolynomial, RealPolynomial> realify(const ExactPolynomial& p) {
  // (x + iy)^n and (x - iy)^n as maps (i, j) -> coefficient of x^i y^j.
  using Expansion = std::map<std::pair<int, int>, GaussianRational>;
  auto expand_power = [](int n, bool conj_sign) {
    Expansion e;
    mpz_class binom = 1;
    for (int j = 0; j <= n; ++j) {
      // C(n, j) x^(n-j) (±iy)^j
      GaussianRational unit(1);
      for (int t = 0; t < j; ++t) unit *= conj_sign ? -GaussianRational::i() : GaussianRational::i();
      e[{n - j, j}] = unit * GaussianRational(Rational(binom));
      binom = binom * (n - j) / (j + 1);
    }
    return e;
  };
  std::map<std::pair<int, int>, GaussianRational> acc;
  for (const auto& [m, c] : p.terms()) {
    const Expansion zpart = expand_power(m.b, false);
    const Expansion wpart = expand_power(m.a, true);
    for (const auto& [ez, cz] : zpart)
      for (const auto& [ew, cw] : wpart) {
        auto key = std::make_pair(ez.first + ew.first, ez.second + ew.second);
        acc[key] += c * cz * cw;
      }
  }
  RealPolynomial re, im;
  for (const auto& [e, c] : acc) {
    re.add_term(e, c.re());
    im.add_term(e, c.im());
  }
  return {re, im};
}

inline std::pair<RealPolynomial, RealPolynomial> realify(const ApproxPolynomial& p) {
  return realify(convert<GaussianRational>(p));
}

}  // namespace mforge

#endif  // MOMENT_FORGE_REALIFY_HPP
