#ifndef MOMENT_FORGE_MONOMIAL_HPP
#define MOMENT_FORGE_MONOMIAL_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace mforge {

/// w^a z^b, with w standing for conj(z).
struct Monomial {
  int a = 0;  ///< exponent of w
  int b = 0;  ///< exponent of z

  constexpr int degree() const { return a + b; }

  constexpr bool divides(const Monomial& m) const { return a <= m.a && b <= m.b; }

  friend constexpr bool operator==(const Monomial&, const Monomial&) = default;

  /// Degree-lexicographic: total degree first, then the larger z-exponent wins,
  /// so z^d > z^(d-1) w > ... > w^d.
  friend constexpr std::strong_ordering operator<=>(const Monomial& x, const Monomial& y) {
    if (auto c = x.degree() <=> y.degree(); c != 0) return c;
    return x.b <=> y.b;
  }

  friend constexpr Monomial operator*(const Monomial& x, const Monomial& y) {
    return {x.a + y.a, x.b + y.b};
  }

  /// The conjugation swap w^a z^b -> w^b z^a.
  constexpr Monomial swapped() const { return {b, a}; }
  constexpr bool is_pure_z_power() const { return a == 0; }
  constexpr bool is_pure_w_power() const { return b == 0; }
};

constexpr std::strong_ordering monomial_compare(const Monomial& x, const Monomial& y) { return x <=> y; }

constexpr Monomial lcm(const Monomial& x, const Monomial& y) {
  return {std::max(x.a, y.a), std::max(x.b, y.b)};
}

constexpr Monomial gcd(const Monomial& x, const Monomial& y) {
  return {std::min(x.a, y.a), std::min(x.b, y.b)};
}

/// x / y; requires y.divides(x).
constexpr Monomial quotient(const Monomial& x, const Monomial& y) { return {x.a - y.a, x.b - y.b}; }

/// Number of monomials of degree <= d: (d+1)(d+2)/2.
constexpr std::size_t monomial_count(int d) {
  return d < 0 ? 0 : static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(d + 2) / 2;
}

/// Position in the column labelling 1, Z, Zbar, Z^2, Zbar Z, Zbar^2, ...
constexpr std::size_t label_index(const Monomial& m) {
  return monomial_count(m.degree() - 1) + static_cast<std::size_t>(m.a);
}

/// All monomials of degree <= d in column-label order (degree ascending,
/// z-exponent descending within a degree).
inline std::vector<Monomial> label_monomials(int d) {
  std::vector<Monomial> out;
  out.reserve(monomial_count(d));
  for (int deg = 0; deg <= d; ++deg)
    for (int a = 0; a <= deg; ++a) out.push_back({a, deg - a});
  return out;
}

/// Text form: "1", "z", "w", "z^2w", "zw^3".
inline std::string to_string(const Monomial& m) {
  if (m.a == 0 && m.b == 0) return "1";
  std::string s;
  if (m.b > 0) s += m.b == 1 ? "z" : "z^" + std::to_string(m.b);
  if (m.a > 0) s += m.a == 1 ? "w" : "w^" + std::to_string(m.a);
  return s;
}

}  // namespace mforge

#endif  // MOMENT_FORGE_MONOMIAL_HPP
