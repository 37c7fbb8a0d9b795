#ifndef MOMENT_FORGE_SCALAR_HPP
#define MOMENT_FORGE_SCALAR_HPP

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdio>
#include <optional>
#include <string>
#include <type_traits>

#include "moment_forge/error.hpp"

namespace mforge {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Exact complex scalar a + bi with a, b rational.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |x|^2, exact.
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw Error("scalar", "division by zero");
    const Rational n = o.norm();
    Rational r = (re_ * o.re_ + im_ * o.im_) / n;
    Rational i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

private:
  Rational re_{0};
  Rational im_{0};
};

template <class S>
concept Scalar = std::same_as<S, GaussianRational> || std::same_as<S, Complex>;

template <class S>
inline constexpr bool is_exact_v = std::same_as<S, GaussianRational>;

/// Exact with exact stays exact; anything else promotes to Complex.
template <Scalar A, Scalar B>
using promote_t = std::conditional_t<is_exact_v<A> && is_exact_v<B>, GaussianRational, Complex>;

inline bool is_zero(const GaussianRational& x) { return x.is_zero(); }
inline bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }

inline GaussianRational conj(const GaussianRational& x) { return x.conj(); }
inline Complex conj(const Complex& x) { return std::conj(x); }

inline Complex to_complex(const GaussianRational& x) { return {x.re().get_d(), x.im().get_d()}; }
inline Complex to_complex(const Complex& x) { return x; }
inline Complex to_complex(const Rational& x) { return {x.get_d(), 0.0}; }

/// Modulus as a double; used only for scale estimates.
inline double magnitude(const GaussianRational& x) { return std::abs(to_complex(x)); }
inline double magnitude(const Complex& x) { return std::abs(x); }

/// Binary floating values are dyadic rationals, so this is exact.
inline Rational exact_from_double(double x) {
  if (!std::isfinite(x)) throw Error("scalar", "non-finite value cannot be made exact");
  return Rational(x);
}

inline GaussianRational exact_from_complex(const Complex& x) {
  return {exact_from_double(x.real()), exact_from_double(x.imag())};
}

template <Scalar To>
To scalar_cast(const GaussianRational& x) {
  if constexpr (is_exact_v<To>) return x;
  else return to_complex(x);
}

template <Scalar To>
To scalar_cast(const Complex& x) {
  if constexpr (is_exact_v<To>) return exact_from_complex(x);
  else return x;
}

/// Best rational approximation by continued fractions with denominator at most
/// max_den; returns nullopt if none is within abs_tol of x.
inline std::optional<Rational> rationalize(double x, long max_den, double abs_tol) {
  if (!std::isfinite(x)) return std::nullopt;
  const bool neg = x < 0;
  double rem = std::fabs(x);
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(rem));
  mpz_class k_prev = 0, k = 1;
  double frac = rem - std::floor(rem);
  for (int iter = 0; iter < 64; ++iter) {
    const double approx = mpq_class(h, k).get_d();
    if (std::fabs(approx - std::fabs(x)) <= abs_tol) {
      Rational q(h, k);
      q.canonicalize();
      return neg ? Rational(-q) : q;
    }
    if (frac < 1e-300) break;
    rem = 1.0 / frac;
    const double a = std::floor(rem);
    frac = rem - a;
    if (a > 1e15) break;
    mpz_class ai = static_cast<long>(a);
    mpz_class h_next = ai * h + h_prev;
    mpz_class k_next = ai * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return std::nullopt;
}

inline std::optional<GaussianRational> rationalize(const Complex& x, long max_den, double abs_tol) {
  auto re = rationalize(x.real(), max_den, abs_tol);
  auto im = rationalize(x.imag(), max_den, abs_tol);
  if (!re || !im) return std::nullopt;
  return GaussianRational(*re, *im);
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "a", "-a", "a/b". Throws on anything else.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error("scalar", "empty rational literal");
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') pos = 1;
  bool slash = false;
  bool digit_before = false, digit_after = false;
  for (std::size_t i = pos; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '/') {
      if (slash) throw Error("scalar", "malformed rational '" + text + "'");
      slash = true;
    } else if (c >= '0' && c <= '9') {
      (slash ? digit_after : digit_before) = true;
    } else {
      throw Error("scalar", "malformed rational '" + text + "'");
    }
  }
  if (!digit_before || (slash && !digit_after))
    throw Error("scalar", "malformed rational '" + text + "'");
  std::string body = text[0] == '+' ? text.substr(1) : text;
  Rational q;
  if (q.set_str(body, 10) != 0) throw Error("scalar", "malformed rational '" + text + "'");
  if (q.get_den() == 0) throw Error("scalar", "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace mforge

#endif  // MOMENT_FORGE_SCALAR_HPP
