#ifndef MOMENT_FORGE_VARIETY_HPP
#define MOMENT_FORGE_VARIETY_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "moment_forge/polynomial.hpp"
#include "moment_forge/realify.hpp"
#include "moment_forge/resultant.hpp"
#include "moment_forge/roots.hpp"
#include "moment_forge/univariate.hpp"

namespace mforge {

inline constexpr double kDefaultTol = 1e-9;

/// A point (z, conj z) of the zero set. The second coordinate is never solved
/// for; it is the conjugate of z by construction.
struct VarietyPoint {
  Complex z;
  double residual = 0;     ///< max(|p|, |p-bar|) at (z, conj z)
  bool simple = true;      ///< Jacobian of (Re p, Im p) is nonsingular
  bool clustered = false;  ///< several raw candidates merged into this point
  std::optional<GaussianRational> exact;  ///< set when z is Gaussian-rational and p(z, conj z) == 0 exactly

  Complex w() const { return std::conj(z); }
};

struct Variety {
  std::vector<VarietyPoint> points;
  ExactPolynomial source;
  double tol = kDefaultTol;

  std::size_t size() const { return points.size(); }
  bool all_simple() const {
    return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.simple; });
  }
  bool all_exact() const {
    return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.exact.has_value(); });
  }
};

struct ClusteredPoint {
  Complex value;
  std::size_t members = 1;
  bool flagged() const { return members > 1; }
};

/// Union-find clustering at distance <= tol; each cluster becomes its centroid.
/// Output is sorted by (Re, Im).
inline std::vector<ClusteredPoint> cluster_points(std::span<const Complex> raw, double tol) {
  if (!(tol > 0)) throw Error("variety", "clustering tolerance must be positive");
  std::vector<std::size_t> parent(raw.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (std::size_t j = i + 1; j < raw.size(); ++j)
      if (std::abs(raw[i] - raw[j]) <= tol) parent[find(i)] = find(j);
  std::vector<ClusteredPoint> out;
  std::vector<std::size_t> slot(raw.size(), raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::size_t r = find(i);
    if (slot[r] == raw.size()) {
      slot[r] = out.size();
      out.push_back({raw[i], 1});
    } else {
      auto& c = out[slot[r]];
      c.value += raw[i];
      ++c.members;
    }
  }
  for (auto& c : out) c.value /= static_cast<double>(c.members);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

namespace detail {

inline std::vector<double> real_roots(const RationalUPoly& eliminant, double tol) {
  std::vector<double> out;
  const RationalUPoly sf = squarefree_part(eliminant);
  if (degree(sf) < 1) return out;
  for (const auto& r : univariate_roots(to_normalized_complex(sf)))
    if (std::fabs(r.imag()) <= tol * std::max(1.0, std::abs(r))) out.push_back(r.real());
  return out;
}

/// f(x0, y) as double coefficients in y, with entries negligible relative to
/// their own evaluation scale set to zero.
inline std::vector<Complex> fiber(const RealPolynomial& f, double x0) {
  const auto coeffs = f.coefficients_in_y();
  std::vector<Complex> out;
  for (const auto& c : coeffs) {
    long double v = 0, s = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      v = v * x0 + static_cast<long double>(c[i].get_d());
      s = s * std::max(1.0, std::fabs(x0)) + std::fabs(c[i].get_d());
    }
    out.emplace_back(std::fabs(static_cast<double>(v)) <= 1e-11 * static_cast<double>(s) ? 0.0 : static_cast<double>(v), 0.0);
  }
  while (!out.empty() && out.back() == Complex(0)) out.pop_back();
  return out;
}

struct RealSystem {
  RealPolynomial f, g, fx, fy, gx, gy;

  RealSystem(RealPolynomial f_, RealPolynomial g_)
      : f(std::move(f_)), g(std::move(g_)), fx(f.partial_x()), fy(f.partial_y()), gx(g.partial_x()), gy(g.partial_y()) {}

  /// Newton on (f, g) = 0; returns the normalised Jacobian determinant at the end.
  double polish(double& x, double& y) const {
    double normalized_det = 0;
    for (int iter = 0; iter < 40; ++iter) {
      const double a = fx.evaluate(x, y), b = fy.evaluate(x, y);
      const double c = gx.evaluate(x, y), d = gy.evaluate(x, y);
      const double det = a * d - b * c;
      const double norms = std::hypot(a, b) * std::hypot(c, d);
      normalized_det = norms > 0 ? std::fabs(det) / norms : 0.0;
      if (normalized_det < 1e-12) break;
      const double fv = f.evaluate(x, y), gv = g.evaluate(x, y);
      const double dx = (d * fv - b * gv) / det;
      const double dy = (a * gv - c * fv) / det;
      x -= dx;
      y -= dy;
      if (std::hypot(dx, dy) <= 4e-16 * std::max(1.0, std::hypot(x, y))) break;
    }
    return normalized_det;
  }
};

/// Eliminant of (f, g) in x after eliminating y; nullopt when it vanishes
/// identically.
inline std::optional<RationalUPoly> eliminant_in_x(const RealPolynomial& f, const RealPolynomial& g) {
  const int dyf = f.degree_y(), dyg = g.degree_y();
  RationalUPoly e;
  if (dyf < 1 && dyg < 1) {
    e = gcd(f.coefficients_in_y().at(0), g.coefficients_in_y().at(0));
    for (double x0 : real_roots(e, kDefaultTol)) {
      (void)x0;
      throw Error("variety", "non-finite variety (a vertical line of zeros)");
    }
    return RationalUPoly{Rational(1)};
  }
  if (dyf < 1) e = f.coefficients_in_y().at(0);
  else if (dyg < 1) e = g.coefficients_in_y().at(0);
  else e = sylvester_resultant(f, g, Variable::y);
  trim(e);
  if (e.empty()) return std::nullopt;
  return e;
}

}  // namespace detail

/// Finite zero set of p(z, conj z): split into real and imaginary parts,
/// eliminate y by a resultant (x if that degenerates), take real roots of the
/// square-free eliminant, back-substitute, polish by Newton, cluster, verify.
inline Variety solve_conjugate_system(const ExactPolynomial& p, double tol = kDefaultTol) {
  if (p.is_zero() || p.degree() < 1) throw Error("variety", "relation polynomial must be nonconstant");
  auto [re, im] = realify(p);
  if (re.is_zero() || im.is_zero()) throw Error("variety", "non-finite variety");

  bool swapped = false;
  auto elim = detail::eliminant_in_x(re, im);
  if (!elim) {
    elim = detail::eliminant_in_x(re.swap_xy(), im.swap_xy());
    swapped = true;
  }
  if (!elim) throw Error("variety", "non-finite variety");
  const RealPolynomial f = swapped ? re.swap_xy() : re;
  const RealPolynomial g = swapped ? im.swap_xy() : im;
  const detail::RealSystem system(re, im);
  const double loose = std::sqrt(tol);

  std::vector<Complex> raw;
  for (double x0 : detail::real_roots(*elim, tol)) {
    std::vector<Complex> fy = detail::fiber(f, x0), gy = detail::fiber(g, x0);
    if (fy.empty() && gy.empty()) throw Error("variety", "non-finite variety (a full fiber of zeros)");
    const bool use_f = fy.size() >= 2 || gy.size() < 2;
    const auto& primary = use_f ? fy : gy;
    const RealPolynomial& other = use_f ? g : f;
    if (primary.size() < 2) continue;
    for (const auto& yr : univariate_roots(primary)) {
      if (std::fabs(yr.imag()) > loose * std::max(1.0, std::abs(yr))) continue;
      const double y0 = yr.real();
      if (std::fabs(other.evaluate(x0, y0)) > loose * other.scale(x0, y0)) continue;
      double x = swapped ? y0 : x0, y = swapped ? x0 : y0;
      system.polish(x, y);
      raw.emplace_back(x, y);
    }
  }

  double radius = 1;
  for (const auto& r : raw) radius = std::max(radius, std::abs(r));
  const ExactPolynomial pbar = conjugate_poly(p);
  const ApproxPolynomial pa = convert<Complex>(p), pbara = convert<Complex>(pbar);

  Variety out;
  out.source = p;
  out.tol = tol;
  for (const auto& c : cluster_points(raw, tol * radius)) {
    VarietyPoint pt;
    pt.z = c.value;
    pt.clustered = c.flagged();
    double x = pt.z.real(), y = pt.z.imag();
    const double ndet = system.polish(x, y);
    pt.z = {x, y};
    pt.simple = ndet > 1e-6;
    pt.residual = std::max(std::abs(evaluate(pa, pt.z, pt.w())), std::abs(evaluate(pbara, pt.z, pt.w())));
    if (pt.residual > 10 * tol * evaluation_scale(pa, std::abs(pt.z))) continue;
    if (auto q = rationalize(pt.z, 10000, 1e-12 * std::max(1.0, std::abs(pt.z)))) {
      if (evaluate(p, *q, q->conj()).is_zero()) {
        pt.exact = q;
        pt.z = to_complex(*q);
        pt.residual = 0;
      }
    }
    out.points.push_back(pt);
  }
  std::sort(out.points.begin(), out.points.end(), [](const auto& a, const auto& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return out;
}

inline Variety solve_conjugate_system(const ApproxPolynomial& p, double tol = kDefaultTol) {
  return solve_conjugate_system(convert<GaussianRational>(p), tol);
}

inline Variety solve_conjugate_system(const AnyPolynomial& p, double tol = kDefaultTol) {
  return std::visit([&](const auto& q) { return solve_conjugate_system(q, tol); }, p);
}

}  // namespace mforge

#endif  // MOMENT_FORGE_VARIETY_HPP
