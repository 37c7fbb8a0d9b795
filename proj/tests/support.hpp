#ifndef MOMENT_FORGE_TESTS_SUPPORT_HPP
#define MOMENT_FORGE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "moment_forge/moment_forge.hpp"

namespace testing_support {

using namespace mforge;

inline ExactPolynomial exact(const std::string& text) { return std::get<ExactPolynomial>(parse_polynomial(text)); }

inline GaussianRational gq(long re, long im = 0) { return {Rational(re), Rational(im)}; }

/// Roots as eigenvalues of the companion matrix, independent of Aberth.
inline std::vector<Complex> companion_roots(const std::vector<Complex>& coeffs) {
  const auto n = static_cast<Eigen::Index>(coeffs.size()) - 1;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (Eigen::Index i = 0; i < n; ++i) c(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c);
  std::vector<Complex> out(es.eigenvalues().begin(), es.eigenvalues().end());
  return out;
}

/// Greedy matching distance between two root lists of equal size.
inline double match_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0;
  for (const auto& x : a) {
    auto best = std::min_element(b.begin(), b.end(), [&](const Complex& p, const Complex& q) {
      return std::abs(p - x) < std::abs(q - x);
    });
    worst = std::max(worst, std::abs(*best - x));
    b.erase(best);
  }
  return worst;
}

/// gamma_ij = sum rho conj(z)^i z^j, summed directly.
inline Complex direct_moment(const std::vector<std::pair<Complex, double>>& atoms, int i, int j) {
  Complex s = 0;
  for (const auto& [z, rho] : atoms) s += rho * std::pow(std::conj(z), i) * std::pow(z, j);
  return s;
}

/// The same sum packed as a sequence, with the symmetry made exact.
inline MomentSequence<Complex> sequence_from_atoms(const std::vector<std::pair<Complex, double>>& atoms, int k) {
  std::map<std::pair<int, int>, Complex> e;
  for (int i = 0; i <= 2 * k; ++i)
    for (int j = i; i + j <= 2 * k; ++j) {
      const Complex v = direct_moment(atoms, i, j);
      e[{i, j}] = i == j ? Complex(v.real(), 0) : v;
      e[{j, i}] = std::conj(e[{i, j}]);
    }
  return MomentSequence<Complex>(k, e);
}

inline std::vector<std::pair<Complex, double>> q7_atoms(const std::vector<double>& densities) {
  const double s = std::sqrt(1.5);
  const std::vector<Complex> z{{0, 0}, {1, 2}, {-1, -2}, {2, 1}, {-2, -1}, {s, s}, {-s, -s}};
  std::vector<std::pair<Complex, double>> out;
  for (std::size_t i = 0; i < z.size(); ++i) out.push_back({z[i], densities[i]});
  return out;
}

/// Small Gaussian integers / halves, never zero when nonzero is asked for.
class Generator {
public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  GaussianRational gaussian(long bound = 3, bool nonzero = false) {
    for (;;) {
      Rational re(integer(-bound, bound), integer(1, 2)), im(integer(-bound, bound), integer(1, 2));
      re.canonicalize();
      im.canonicalize();
      const GaussianRational c{re, im};
      if (!nonzero || !c.is_zero()) return c;
    }
  }

  ExactPolynomial polynomial(int max_degree, int terms) {
    ExactPolynomial p;
    for (int t = 0; t < terms; ++t) {
      const int d = static_cast<int>(integer(0, max_degree));
      const int a = static_cast<int>(integer(0, d));
      p.add_term({a, d - a}, gaussian());
    }
    return p;
  }

  Complex complex_in_disc(double radius) {
    for (;;) {
      Complex z(real(-radius, radius), real(-radius, radius));
      if (std::abs(z) <= radius) return z;
    }
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

}  // namespace testing_support

#endif
