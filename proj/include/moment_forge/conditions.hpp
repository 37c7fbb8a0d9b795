#ifndef MOMENT_FORGE_CONDITIONS_HPP
#define MOMENT_FORGE_CONDITIONS_HPP

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "moment_forge/groebner.hpp"
#include "moment_forge/moment.hpp"
#include "moment_forge/poly_text.hpp"

namespace mforge {

/// sum of coefficient * gamma_ij, a linear form in the moments.
template <Scalar S>
struct LinearForm {
  std::map<std::pair<int, int>, S> coefficients;

  template <Scalar T>
  promote_t<S, T> evaluate(const MomentSequence<T>& gamma) const {
    using R = promote_t<S, T>;
    R acc(0);
    for (const auto& [idx, c] : coefficients) acc += scalar_cast<R>(c) * scalar_cast<R>(gamma(idx.first, idx.second));
    return acc;
  }
};

/// Lambda(g) written as a linear form in the moments.
template <Scalar S>
LinearForm<S> riesz_form(const Polynomial<S>& g) {
  LinearForm<S> f;
  for (const auto& [m, c] : g.terms()) f.coefficients[{m.a, m.b}] = c;
  return f;
}

template <Scalar S>
struct NumericalCondition {
  std::size_t element = 0;  ///< position in the basis, 0-based
  bool times_z = false;     ///< Lambda(z g) rather than Lambda(g)
  Polynomial<S> g;          ///< the basis element as used (scaled when exact)
  LinearForm<S> form;
};

/// Exact elements are rescaled to primitive Gaussian-integer form, which is
/// how hand computations usually present them.
inline ExactPolynomial primitive_form(const ExactPolynomial& g) {
  if (g.is_zero()) return g;
  mpz_class den = 1;
  for (const auto& [m, c] : g.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re().get_den_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.im().get_den_mpz_t());
  }
  ExactPolynomial out = g * GaussianRational(Rational(den));
  mpz_class content = 0;
  for (const auto& [m, c] : out.terms()) {
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.re().get_num_mpz_t());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.im().get_num_mpz_t());
  }
  if (content > 1) out *= GaussianRational(Rational(mpz_class(1), content));
  return out;
}

/// For each g_i: Lambda(g_i) = 0 and Lambda(z g_i) = 0.
template <Scalar S>
std::vector<NumericalCondition<S>> numerical_conditions(const std::vector<Polynomial<S>>& basis) {
  std::vector<NumericalCondition<S>> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Polynomial<S> g = basis[i];
    if constexpr (is_exact_v<S>) g = primitive_form(g);
    out.push_back({i, false, g, riesz_form(g)});
    out.push_back({i, true, g, riesz_form(g.times_term({0, 1}, S(1)))});
  }
  return out;
}

template <Scalar S>
std::vector<NumericalCondition<S>> numerical_conditions(const GroebnerBasis<S>& basis) {
  return numerical_conditions(basis.elements);
}

// ---------------------------------------------------------------------------
// Real coordinates. Each gamma_ij with i > j contributes the unknowns
// Re gamma_ij and Im gamma_ij; diagonal moments are real unknowns.

enum class Part { re, im, real };

struct Unknown {
  int i = 0, j = 0;
  Part part = Part::real;
  auto operator<=>(const Unknown&) const = default;
};

template <Scalar S>
using RealForm = std::map<Unknown, S>;

/// Rewrites a linear form over the Hermitian unknowns, using
/// gamma_ji = conj(gamma_ij).
template <Scalar S>
RealForm<S> real_coordinates(const LinearForm<S>& f) {
  RealForm<S> out;
  auto add = [&](Unknown u, const S& c) {
    auto& slot = out[u];
    slot += c;
    if (is_zero(slot)) out.erase(u);
  };
  const S i_unit = scalar_cast<S>(GaussianRational::i());
  for (const auto& [idx, c] : f.coefficients) {
    const auto [i, j] = idx;
    if (i == j) add({i, j, Part::real}, c);
    else if (i > j) {
      add({i, j, Part::re}, c);
      add({i, j, Part::im}, c * i_unit);
    } else {
      add({j, i, Part::re}, c);
      add({j, i, Part::im}, S(0) - c * i_unit);
    }
  }
  return out;
}

/// True iff a = lambda * b for some nonzero scalar lambda (exactly, or to tol).
template <Scalar S>
bool proportional(const RealForm<S>& a, const RealForm<S>& b, double tol = 0) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  const auto& [u0, b0] = *b.begin();
  auto it = a.find(u0);
  if (it == a.end()) return false;
  const S lambda = it->second / b0;
  std::map<Unknown, bool> keys;
  for (const auto& [u, c] : a) keys[u] = true;
  for (const auto& [u, c] : b) keys[u] = true;
  for (const auto& [u, unused] : keys) {
    const S av = a.contains(u) ? a.at(u) : S(0);
    const S bv = b.contains(u) ? b.at(u) : S(0);
    const S diff = av - lambda * bv;
    if constexpr (is_exact_v<S>) {
      if (!diff.is_zero()) return false;
    } else {
      if (std::abs(diff) > tol * std::max(std::abs(av), std::abs(lambda * bv))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text form, e.g. "0 = Λ(g₂) = 2i·Im(γ₁₀) − 4i·Im(γ₂₀) − 8i·Im(γ₂₁)".

namespace detail {

inline const char* kMinus = "−";

inline std::string subscript(int n) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄",
                                 "₅", "₆", "₇", "₈", "₉"};
  std::string out;
  for (char c : std::to_string(n)) out += digits[c - '0'];
  return out;
}

inline std::string gamma_name(int i, int j) {
  if (i < 10 && j < 10) return "γ" + subscript(i) + subscript(j);
  return "γ" + subscript(i) + "," + subscript(j);
}

inline std::string magnitude_text(const Rational& q) { return Rational(abs(q)).get_str(); }
inline std::string magnitude_text(double x) { return format_double(std::fabs(x)); }

inline std::string signed_text(const Rational& q) {
  return (sgn(q) < 0 ? std::string(kMinus) : std::string()) + Rational(abs(q)).get_str();
}
inline std::string signed_text(double x) {
  return (std::signbit(x) ? std::string(kMinus) : std::string()) + format_double(std::fabs(x));
}

struct SignedCoefficient {
  bool negative = false;
  std::string text;  ///< empty for a unit coefficient
};

/// Splits off a sign when the coefficient is real or purely imaginary;
/// otherwise the whole value is shown in parentheses.
template <class R>
SignedCoefficient split_coefficient(const R& re, const R& im) {
  const bool re_zero = re == 0, im_zero = im == 0;
  if (im_zero) {
    const bool unit = re == 1 || re == -1;
    return {re < 0, unit ? std::string() : magnitude_text(re)};
  }
  if (re_zero) {
    const bool unit = im == 1 || im == -1;
    return {im < 0, (unit ? std::string() : magnitude_text(im)) + "i"};
  }
  const bool unit_im = im == 1 || im == -1;
  return {false, "(" + signed_text(re) + (im < 0 ? kMinus : "+") + (unit_im ? std::string() : magnitude_text(im)) + "i)"};
}

inline SignedCoefficient split(const GaussianRational& c) { return split_coefficient(c.re(), c.im()); }
inline SignedCoefficient split(const Complex& c) { return split_coefficient(c.real(), c.imag()); }

struct DisplayTerm {
  std::size_t position;  ///< label index of the moment's monomial, then Re before Im
  std::string symbol;
  bool wrapped;          ///< Re(...) / Im(...) get a "·" after the coefficient
};

template <Scalar S>
std::string join_terms(const std::vector<std::pair<DisplayTerm, S>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto& [term, c] = terms[t];
    const SignedCoefficient sc = split(c);
    if (t == 0) out += sc.negative ? kMinus : "";
    else out += sc.negative ? std::string(" ") + kMinus + " " : std::string(" + ");
    if (!sc.text.empty()) out += sc.text + (term.wrapped ? "·" : "");
    out += term.symbol;
  }
  return out;
}

}  // namespace detail

/// Hermitian pairs whose members both occur are merged into real and
/// imaginary parts of the member with the larger first index; everything else
/// is printed as it stands.
template <Scalar S>
std::string format_form(const LinearForm<S>& f) {
  std::vector<std::pair<detail::DisplayTerm, S>> terms;
  const S i_unit = scalar_cast<S>(GaussianRational::i());
  for (const auto& [idx, c] : f.coefficients) {
    const auto [i, j] = idx;
    const bool paired = i != j && f.coefficients.contains({j, i});
    if (paired && i < j) continue;
    const std::size_t pos = 2 * label_index(Monomial{i, j});
    if (!paired) {
      terms.push_back({{pos, detail::gamma_name(i, j), false}, c});
      continue;
    }
    // a gamma_ij + b conj(gamma_ij) = (a + b) Re + i (a - b) Im
    const S& b = f.coefficients.at({j, i});
    const S re_coef = c + b;
    const S im_coef = i_unit * (c - b);
    const std::string name = detail::gamma_name(i, j);
    if (!is_zero(re_coef)) terms.push_back({{pos, "Re(" + name + ")", true}, re_coef});
    if (!is_zero(im_coef)) terms.push_back({{pos + 1, "Im(" + name + ")", true}, im_coef});
  }
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first.position < y.first.position; });

  // A common factor that is neither real nor imaginary is pulled out front,
  // scaled so the smallest remaining coefficient is a unit.
  if (terms.size() > 1) {
    std::size_t smallest = 0;
    for (std::size_t t = 1; t < terms.size(); ++t)
      if (std::abs(to_complex(terms[t].second)) < std::abs(to_complex(terms[smallest].second))) smallest = t;
    const S factor = terms[smallest].second;
    const Complex fc = to_complex(factor);
    bool common = fc.real() != 0 && fc.imag() != 0;
    for (const auto& [term, c] : terms) {
      const S ratio = c / factor;
      if constexpr (is_exact_v<S>) common = common && ratio.is_real();
      else common = common && std::fabs(ratio.imag()) <= 1e-12 * std::abs(ratio);
    }
    if (common) {
      for (auto& [term, c] : terms) {
        c = c / factor;
        if constexpr (!is_exact_v<S>) c = Complex(c.real(), 0);
      }
      const detail::SignedCoefficient sc = detail::split(factor);
      return sc.text + "·(" + detail::join_terms(terms) + ")";
    }
  }
  return detail::join_terms(terms);
}

template <Scalar S>
std::string format_condition(const NumericalCondition<S>& c) {
  const std::string name = "g" + detail::subscript(static_cast<int>(c.element + 1));
  const std::string lhs = c.times_z ? "Λ(z·" + name + ")" : "Λ(" + name + ")";
  return "0 = " + lhs + " = " + format_form(c.form);
}

}  // namespace mforge

#endif  // MOMENT_FORGE_CONDITIONS_HPP
