#ifndef MOMENT_FORGE_POLY_TEXT_HPP
#define MOMENT_FORGE_POLY_TEXT_HPP

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "moment_forge/polynomial.hpp"

// Text format: "2z^3 + 3z^2 + w", "(1/2+1/3i)zw", "z^3 - 8iz - 5w".
// Coefficients are Gaussian rationals a/b+c/di or floating literals; a single
// floating literal makes the whole polynomial approximate.

namespace mforge {

namespace detail {

inline std::string format_approx_real(double x) {
  std::string s = format_double(x);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

inline std::string format_coefficient(const GaussianRational& c) {
  if (c.is_real()) return c.re().get_str();
  if (sgn(c.re()) == 0) {
    if (c.im() == 1) return "i";
    if (c.im() == -1) return "-i";
    return c.im().get_str() + "i";
  }
  std::string s = "(" + c.re().get_str();
  s += sgn(c.im()) < 0 ? "-" : "+";
  const Rational mag = abs(c.im());
  s += (mag == 1 ? std::string() : mag.get_str()) + "i)";
  return s;
}

inline std::string format_coefficient(const Complex& c) {
  if (c.imag() == 0.0) return format_approx_real(c.real());
  if (c.real() == 0.0) return format_approx_real(c.imag()) + "i";
  std::string s = "(" + format_approx_real(c.real());
  s += std::signbit(c.imag()) ? "-" : "+";
  return s + format_approx_real(std::fabs(c.imag())) + "i)";
}

template <Scalar S>
bool is_one(const S& c) { return c == S(1); }
template <Scalar S>
bool is_minus_one(const S& c) { return c == S(-1); }

}  // namespace detail

template <Scalar S>
std::string to_string(const Polynomial<S>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string term;
    const bool constant = m.degree() == 0;
    if (!constant && detail::is_one(c)) term = to_string(m);
    else if (!constant && detail::is_minus_one(c)) term = "-" + to_string(m);
    else term = detail::format_coefficient(c) + (constant ? std::string() : to_string(m));
    if (first) {
      out = term;
      first = false;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

inline std::string to_string(const AnyPolynomial& p) {
  return std::visit([](const auto& q) { return to_string(q); }, p);
}

namespace detail {

struct Number {
  bool exact = true;
  Rational q{0};
  double d = 0.0;

  double as_double() const { return exact ? q.get_d() : d; }
};

struct ComplexNumber {
  Number re, im;
};

inline Number add(const Number& x, const Number& y) {
  if (x.exact && y.exact) return {true, Rational(x.q + y.q), 0.0};
  return {false, Rational(0), x.as_double() + y.as_double()};
}

inline Number negate(const Number& x) {
  return x.exact ? Number{true, Rational(-x.q), 0.0} : Number{false, Rational(0), -x.d};
}

inline Number mul(const Number& x, const Number& y) {
  if (x.exact && y.exact) return {true, Rational(x.q * y.q), 0.0};
  return {false, Rational(0), x.as_double() * y.as_double()};
}

inline ComplexNumber mul(const ComplexNumber& x, const ComplexNumber& y) {
  return {add(mul(x.re, y.re), negate(mul(x.im, y.im))), add(mul(x.re, y.im), mul(x.im, y.re))};
}

class PolyParser {
public:
  explicit PolyParser(const std::string& text) : original_(text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
  }

  AnyPolynomial parse() {
    if (s_.empty()) fail("empty polynomial");
    std::vector<std::pair<Monomial, ComplexNumber>> terms;
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = get() == '-';
    for (;;) {
      auto [m, c] = parse_term();
      if (negative) c = {negate(c.re), negate(c.im)};
      terms.emplace_back(m, c);
      if (at_end()) break;
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'", pos_ - 1);
      negative = op == '-';
    }
    bool exact = true;
    for (const auto& [m, c] : terms) exact = exact && c.re.exact && c.im.exact;
    if (exact) {
      ExactPolynomial p;
      for (const auto& [m, c] : terms) p.add_term(m, GaussianRational(c.re.q, c.im.q));
      return p;
    }
    ApproxPolynomial p;
    for (const auto& [m, c] : terms) p.add_term(m, Complex(c.re.as_double(), c.im.as_double()));
    return p;
  }

private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  char get() { return at_end() ? '\0' : s_[pos_++]; }

  [[noreturn]] void fail(const std::string& what, std::size_t where) const {
    throw Error("poly", what + " at position " + std::to_string(where) + " in '" + original_ + "'");
  }
  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  std::pair<Monomial, ComplexNumber> parse_term() {
    ComplexNumber coef{{true, Rational(1), 0.0}, {true, Rational(0), 0.0}};
    bool have_coef = false;
    if (peek() == '(') {
      coef = parse_parenthesised();
      have_coef = true;
    } else if (is_digit(peek()) || peek() == '.') {
      Number r = parse_number();
      if (peek() == 'i') {
        get();
        coef = {{true, Rational(0), 0.0}, r};
        if (!r.exact) coef.re = {false, Rational(0), 0.0};
      } else {
        coef = {r, {r.exact, Rational(0), 0.0}};
      }
      have_coef = true;
    } else if (peek() == 'i') {
      get();
      coef = {{true, Rational(0), 0.0}, {true, Rational(1), 0.0}};
      have_coef = true;
    }
    Monomial m{0, 0};
    bool have_factor = false;
    while (peek() == 'z' || peek() == 'w' || peek() == '*') {
      const char v = get();
      if (v == '*') continue;
      int e = 1;
      if (peek() == '^') {
        get();
        if (!is_digit(peek())) fail("expected exponent");
        e = 0;
        while (is_digit(peek())) {
          e = e * 10 + (get() - '0');
          if (e > 10000) fail("exponent too large");
        }
      }
      (v == 'z' ? m.b : m.a) += e;
      have_factor = true;
    }
    if (!have_coef && !have_factor) fail(at_end() ? "unexpected end of input" : std::string("unexpected character '") + peek() + "'");
    return {m, coef};
  }

  ComplexNumber parse_parenthesised() {
    get();  // '('
    ComplexNumber acc{{true, Rational(0), 0.0}, {true, Rational(0), 0.0}};
    bool first = true;
    while (peek() != ')') {
      if (at_end()) fail("unterminated '('");
      bool negative = false;
      if (peek() == '+' || peek() == '-') negative = get() == '-';
      else if (!first) fail("expected '+' or '-' inside parentheses");
      Number r{true, Rational(1), 0.0};
      bool have_number = false;
      if (is_digit(peek()) || peek() == '.') {
        r = parse_number();
        have_number = true;
      }
      const bool imaginary = peek() == 'i';
      if (imaginary) get();
      if (!have_number && !imaginary) fail("expected a number");
      if (negative) r = negate(r);
      if (imaginary) acc.im = add(acc.im, r);
      else acc.re = add(acc.re, r);
      first = false;
    }
    get();  // ')'
    if (first) fail("empty parentheses");
    return acc;
  }

  Number parse_number() {
    const std::size_t start = pos_;
    bool floating = false;
    while (is_digit(peek())) get();
    if (peek() == '.') {
      floating = true;
      get();
      while (is_digit(peek())) get();
    }
    if (peek() == 'e' || peek() == 'E') {
      floating = true;
      get();
      if (peek() == '+' || peek() == '-') get();
      if (!is_digit(peek())) fail("malformed exponent");
      while (is_digit(peek())) get();
    }
    std::string token = s_.substr(start, pos_ - start);
    if (token == ".") fail("malformed number", start);
    if (floating) return {false, Rational(0), std::stod(token)};
    if (peek() == '/') {
      get();
      if (!is_digit(peek())) fail("malformed fraction");
      const std::size_t ds = pos_;
      while (is_digit(peek())) get();
      token += "/" + s_.substr(ds, pos_ - ds);
    }
    try {
      return {true, parse_rational(token), 0.0};
    } catch (const Error&) {
      fail("malformed number '" + token + "'", start);
    }
  }

  std::string original_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline AnyPolynomial parse_polynomial(const std::string& text) { return detail::PolyParser(text).parse(); }

inline bool is_exact(const AnyPolynomial& p) { return std::holds_alternative<ExactPolynomial>(p); }

}  // namespace mforge

#endif  // MOMENT_FORGE_POLY_TEXT_HPP
