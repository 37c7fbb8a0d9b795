#ifndef MOMENT_FORGE_ROOTS_HPP
#define MOMENT_FORGE_ROOTS_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "moment_forge/error.hpp"
#include "moment_forge/scalar.hpp"

namespace mforge {

/// Thrown when simultaneous iteration hits its cap; carries the last iterates.
class RootFindingError : public Error {
public:
  RootFindingError(const std::string& message, std::vector<Complex> partial)
      : Error("variety", message), partial_(std::move(partial)) {}
  const std::vector<Complex>& partial_roots() const { return partial_; }

private:
  std::vector<Complex> partial_;
};

namespace detail {

inline void horner(const std::vector<Complex>& c, Complex x, Complex& p, Complex& dp) {
  p = 0;
  dp = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * x + p;
    p = p * x + c[i];
  }
}

/// sum |c_i| |x|^i, the rounding-error scale of Horner's rule at x.
inline double horner_scale(const std::vector<Complex>& c, double r) {
  double s = 0;
  for (std::size_t i = c.size(); i-- > 0;) s = s * r + std::abs(c[i]);
  return s;
}

}  // namespace detail

/// All complex roots, with multiplicity, of sum coeffs[i] x^i. Aberth-Ehrlich
/// iteration from a perturbed circle, followed by Newton polishing.
inline std::vector<Complex> univariate_roots(std::vector<Complex> coeffs, int max_iterations = 1000) {
  while (!coeffs.empty() && coeffs.back() == Complex(0)) coeffs.pop_back();
  if (coeffs.size() < 2) throw Error("variety", "root finding needs degree >= 1");
  for (const auto& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw Error("variety", "non-finite coefficient");

  std::vector<Complex> roots;
  std::size_t lead_zeros = 0;
  while (coeffs[lead_zeros] == Complex(0)) ++lead_zeros;
  roots.assign(lead_zeros, Complex(0));
  std::vector<Complex> c(coeffs.begin() + static_cast<std::ptrdiff_t>(lead_zeros), coeffs.end());
  const std::size_t n = c.size() - 1;
  if (n == 0) return roots;
  const Complex lead = c.back();
  for (auto& x : c) x /= lead;
  if (n == 1) {
    roots.push_back(-c[0]);
    return roots;
  }

  double radius = 0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::pow(std::abs(c[i]), 1.0 / static_cast<double>(n - i)));
  if (radius == 0) radius = 1;
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, angle);
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<bool> done(n, false);
  bool converged = false;
  for (int iter = 0; iter < max_iterations && !converged; ++iter) {
    converged = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      Complex p, dp;
      detail::horner(c, z[k], p, dp);
      const double noise = 4 * eps * detail::horner_scale(c, std::abs(z[k]));
      if (std::abs(p) <= noise) {
        done[k] = true;
        continue;
      }
      Complex sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      const Complex ratio = p / dp;
      const Complex delta = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) {
        z[k] += Complex(radius * 1e-3, radius * 1e-3);
        converged = false;
        continue;
      }
      z[k] -= delta;
      if (std::abs(delta) <= 2 * eps * std::max(1.0, std::abs(z[k]))) done[k] = true;
      else converged = false;
    }
  }
  if (!converged) {
    roots.insert(roots.end(), z.begin(), z.end());
    throw RootFindingError("Aberth iteration did not converge", roots);
  }

  for (auto& r : z) {
    for (int step = 0; step < 3; ++step) {
      Complex p, dp;
      detail::horner(c, r, p, dp);
      if (dp == Complex(0)) break;
      const Complex candidate = r - p / dp;
      Complex pc, dpc;
      detail::horner(c, candidate, pc, dpc);
      if (std::abs(pc) < std::abs(p)) r = candidate;
      else break;
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace mforge

#endif  // MOMENT_FORGE_ROOTS_HPP
