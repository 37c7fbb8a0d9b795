#ifndef MOMENT_FORGE_GROEBNER_HPP
#define MOMENT_FORGE_GROEBNER_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "moment_forge/polynomial.hpp"
#include "moment_forge/variety.hpp"

namespace mforge {

enum class BasisSource { generators, points };

/// Reduced monic Groebner basis under deglex, sorted by leading monomial,
/// greatest first.
template <Scalar S>
struct GroebnerBasis {
  std::vector<Polynomial<S>> elements;
  BasisSource source = BasisSource::generators;

  std::size_t size() const { return elements.size(); }
  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& g : elements) out.push_back(g.leading_monomial());
    return out;
  }
  bool is_unit() const { return elements.size() == 1 && elements[0].is_constant(); }
};

using AnyBasis = std::variant<GroebnerBasis<GaussianRational>, GroebnerBasis<Complex>>;

template <Scalar S>
Polynomial<S> s_polynomial(const Polynomial<S>& f, const Polynomial<S>& g) {
  if (f.is_zero() || g.is_zero()) throw Error("groebner", "S-polynomial of the zero polynomial");
  const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  const Monomial lf = f.leading_monomial(), lg = g.leading_monomial();
  Polynomial<S> out = f.times_term(quotient(l, lf), S(1) / f.leading_coefficient());
  out -= g.times_term(quotient(l, lg), S(1) / g.leading_coefficient());
  out.erase(l);
  return out;
}

template <Scalar S>
Polynomial<S> normal_form(const Polynomial<S>& p, const std::vector<Polynomial<S>>& g) {
  return divide(p, g).remainder;
}

template <Scalar S>
Polynomial<S> normal_form(const Polynomial<S>& p, const GroebnerBasis<S>& g) {
  return normal_form(p, g.elements);
}

namespace detail {

template <Scalar S>
void sort_by_leading_monomial(std::vector<Polynomial<S>>& g) {
  std::sort(g.begin(), g.end(),
            [](const auto& a, const auto& b) { return a.leading_monomial() > b.leading_monomial(); });
}

/// Minimalise, interreduce and normalise a Groebner basis (exact arithmetic).
inline std::vector<ExactPolynomial> reduce_basis(std::vector<ExactPolynomial> g) {
  std::erase_if(g, [](const auto& p) { return p.is_zero(); });
  sort_by_leading_monomial(g);
  std::vector<ExactPolynomial> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& li = g[i].leading_monomial();
      const auto& lj = g[j].leading_monomial();
      // among equal leading monomials keep the last one
      redundant = lj.divides(li) && (lj != li || j > i);
    }
    if (!redundant) minimal.push_back(monic(g[i]));
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<ExactPolynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const ExactPolynomial lead = ExactPolynomial::term(minimal[i].leading_monomial());
    minimal[i] = lead + normal_form(minimal[i] - lead, others);
  }
  sort_by_leading_monomial(minimal);
  return minimal;
}

}  // namespace detail

/// Buchberger's algorithm with the coprime and chain criteria. Approximate
/// generators are taken at their exact binary values.
inline GroebnerBasis<GaussianRational> buchberger(const std::vector<ExactPolynomial>& generators) {
  std::vector<ExactPolynomial> g;
  for (const auto& f : generators)
    if (!f.is_zero()) g.push_back(monic(f));
  if (g.empty()) throw Error("groebner", "the zero ideal has no Groebner basis to compute");
  for (const auto& f : g)
    if (f.is_constant()) return {{ExactPolynomial(GaussianRational(1))}, BasisSource::generators};

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 1; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.insert({i, j});
  auto processed = [&](std::size_t a, std::size_t b) { return !pairs.contains({std::min(a, b), std::max(a, b)}); };

  while (!pairs.empty()) {
    // normal strategy: smallest lcm first
    auto best = pairs.begin();
    Monomial best_lcm = lcm(g[best->first].leading_monomial(), g[best->second].leading_monomial());
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
      const Monomial l = lcm(g[it->first].leading_monomial(), g[it->second].leading_monomial());
      if (l < best_lcm) {
        best = it;
        best_lcm = l;
      }
    }
    const auto [i, j] = *best;
    pairs.erase(best);
    const Monomial li = g[i].leading_monomial(), lj = g[j].leading_monomial();
    if (gcd(li, lj).degree() == 0) continue;
    bool chain = false;
    for (std::size_t t = 0; t < g.size() && !chain; ++t)
      chain = t != i && t != j && g[t].leading_monomial().divides(best_lcm) && processed(i, t) && processed(j, t);
    if (chain) continue;
    ExactPolynomial r = normal_form(s_polynomial(g[i], g[j]), g);
    if (r.is_zero()) continue;
    if (r.is_constant()) return {{ExactPolynomial(GaussianRational(1))}, BasisSource::generators};
    g.push_back(monic(r));
    for (std::size_t t = 0; t + 1 < g.size(); ++t) pairs.insert({t, g.size() - 1});
  }
  return {detail::reduce_basis(std::move(g)), BasisSource::generators};
}

inline GroebnerBasis<GaussianRational> buchberger(const std::vector<ApproxPolynomial>& generators) {
  std::vector<ExactPolynomial> exact;
  for (const auto& f : generators) exact.push_back(convert<GaussianRational>(f));
  return buchberger(exact);
}

/// Every pairwise S-polynomial reduces to zero.
template <Scalar S>
bool satisfies_buchberger_criterion(const std::vector<Polynomial<S>>& g, double tol = 0) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const auto r = normal_form(s_polynomial(g[i], g[j]), g);
      if constexpr (is_exact_v<S>) {
        if (!r.is_zero()) return false;
      } else {
        if (max_coefficient(r) > tol) return false;
      }
    }
  return true;
}

/// Monomials divisible by no element of lms; errors if that set is infinite.
inline std::vector<Monomial> standard_monomials(const std::vector<Monomial>& lms) {
  int z_bound = -1, w_bound = -1;
  for (const auto& m : lms) {
    if (m.degree() == 0) return {};
    if (m.is_pure_z_power() && (z_bound < 0 || m.b < z_bound)) z_bound = m.b;
    if (m.is_pure_w_power() && (w_bound < 0 || m.a < w_bound)) w_bound = m.a;
  }
  if (z_bound < 0 || w_bound < 0) throw Error("groebner", "infinite variety (no pure power among the leading monomials)");
  std::vector<Monomial> out;
  for (int a = 0; a < w_bound; ++a)
    for (int b = 0; b < z_bound; ++b) {
      const Monomial m{a, b};
      if (std::none_of(lms.begin(), lms.end(), [&](const Monomial& l) { return l.divides(m); })) out.push_back(m);
    }
  std::sort(out.begin(), out.end());
  return out;
}

template <Scalar S>
std::vector<Monomial> standard_monomials(const GroebnerBasis<S>& g) {
  return standard_monomials(g.leading_monomials());
}

namespace detail {

template <Scalar S>
std::vector<S> evaluation_vector(const Monomial& m, const std::vector<S>& points) {
  std::vector<S> v;
  v.reserve(points.size());
  for (const auto& z : points) v.push_back(power(conj(z), m.a) * power(z, m.b));
  return v;
}

/// Monomials in increasing deglex order, degree by degree, skipping multiples
/// of known leading monomials; calls visit(m) and stops once a whole degree is
/// covered by the leading monomials.
template <class Visit>
void enumerate_candidates(std::vector<Monomial>& lms, std::size_t max_degree, Visit visit) {
  for (std::size_t d = 0; d <= max_degree; ++d) {
    bool any = false;
    for (int b = 0; b <= static_cast<int>(d); ++b) {
      const Monomial m{static_cast<int>(d) - b, b};
      if (std::any_of(lms.begin(), lms.end(), [&](const Monomial& l) { return l.divides(m); })) continue;
      any = true;
      visit(m);
    }
    if (!any) return;
  }
}

inline void require_distinct(const std::vector<Complex>& points, double tol) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (std::abs(points[i] - points[j]) <= tol * std::max(1.0, std::abs(points[i])))
        throw Error("groebner", "non-simple point set");
}

}  // namespace detail

/// Buchberger-Moeller over exact points: each monomial whose evaluation vector
/// depends on those of the current standard monomials yields the basis element
/// m - (its normal form).
inline GroebnerBasis<GaussianRational> vanishing_ideal(const std::vector<GaussianRational>& points) {
  if (points.empty()) throw Error("groebner", "vanishing ideal of an empty point set");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw Error("groebner", "non-simple point set");

  // Echelon rows: reduced evaluation vector, pivot position, and the polynomial
  // (in standard monomials) that evaluates to it.
  struct Row {
    std::vector<GaussianRational> v;
    std::size_t pivot;
    ExactPolynomial poly;
  };
  std::vector<Row> rows;
  std::vector<Monomial> lms;
  std::vector<ExactPolynomial> basis;
  detail::enumerate_candidates(lms, points.size(), [&](const Monomial& m) {
    auto v = detail::evaluation_vector(m, points);
    ExactPolynomial poly = ExactPolynomial::term(m);
    for (const auto& r : rows) {
      if (v[r.pivot].is_zero()) continue;
      const GaussianRational f = v[r.pivot];
      for (std::size_t t = 0; t < v.size(); ++t) v[t] -= f * r.v[t];
      poly -= r.poly * f;
    }
    const auto nz = std::find_if(v.begin(), v.end(), [](const auto& x) { return !x.is_zero(); });
    if (nz == v.end()) {
      basis.push_back(poly);
      lms.push_back(m);
      return;
    }
    const std::size_t pivot = static_cast<std::size_t>(nz - v.begin());
    const GaussianRational inv = GaussianRational(1) / v[pivot];
    for (auto& x : v) x *= inv;
    poly *= inv;
    for (auto& r : rows) {
      if (r.v[pivot].is_zero()) continue;
      const GaussianRational f = r.v[pivot];
      for (std::size_t t = 0; t < v.size(); ++t) r.v[t] -= f * v[t];
      r.poly -= poly * f;
    }
    rows.push_back({std::move(v), pivot, std::move(poly)});
  });
  detail::sort_by_leading_monomial(basis);
  return {std::move(basis), BasisSource::points};
}

/// Buchberger-Moeller in floating point. Dependence of a candidate column on
/// the standard-monomial columns is decided by column-pivoted QR with a
/// relative threshold; once there are as many standard monomials as points
/// every further candidate is dependent.
inline GroebnerBasis<Complex> vanishing_ideal(const std::vector<Complex>& points, double rank_tol = 1e-9) {
  if (points.empty()) throw Error("groebner", "vanishing ideal of an empty point set");
  detail::require_distinct(points, 1e-12);
  const auto n = static_cast<Eigen::Index>(points.size());
  std::vector<Monomial> standard, lms;
  std::vector<double> scales;
  Eigen::MatrixXcd a(n, 0);
  std::vector<ApproxPolynomial> basis;
  detail::enumerate_candidates(lms, points.size(), [&](const Monomial& m) {
    const auto raw = detail::evaluation_vector(m, points);
    Eigen::VectorXcd v(n);
    for (Eigen::Index t = 0; t < n; ++t) v(t) = raw[static_cast<std::size_t>(t)];
    const double scale = v.norm();
    if (scale > 0) v /= scale;
    bool dependent = scale == 0 || static_cast<Eigen::Index>(standard.size()) == n;
    Eigen::VectorXcd coef;
    if (!dependent && !standard.empty()) {
      Eigen::MatrixXcd trial(n, a.cols() + 1);
      trial << a, v;
      Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(trial);
      qr.setThreshold(rank_tol);
      dependent = qr.rank() <= a.cols();
    }
    if (!dependent) {
      a.conservativeResize(Eigen::NoChange, a.cols() + 1);
      a.col(a.cols() - 1) = v;
      standard.push_back(m);
      scales.push_back(scale);
      return;
    }
    ApproxPolynomial g = ApproxPolynomial::term(m);
    if (scale > 0 && !standard.empty()) {
      coef = a.colPivHouseholderQr().solve(v);
      for (std::size_t s = 0; s < standard.size(); ++s)
        g.add_term(standard[s], -coef(static_cast<Eigen::Index>(s)) * scale / scales[s]);
    }
    basis.push_back(std::move(g));
    lms.push_back(m);
  });
  detail::sort_by_leading_monomial(basis);
  return {std::move(basis), BasisSource::points};
}

/// Tries to replace a floating basis by an exact one: rationalise each
/// coefficient, then accept only if the result is a reduced Groebner basis
/// (exact S-pair check) with the right number of standard monomials that
/// vanishes on the points and contains both p and p-bar.
inline std::optional<GroebnerBasis<GaussianRational>> certify_exact(const GroebnerBasis<Complex>& approx,
                                                                    const Variety& variety, double tol) {
  std::vector<ExactPolynomial> exact;
  for (const auto& g : approx.elements) {
    ExactPolynomial e;
    for (const auto& [m, c] : g.terms()) {
      auto q = rationalize(c, 10000, 1e-10 * std::max(1.0, std::abs(c)));
      if (!q) return std::nullopt;
      e.add_term(m, *q);
    }
    if (e.is_zero() || e.leading_monomial() != g.leading_monomial()) return std::nullopt;
    exact.push_back(std::move(e));
  }
  if (!satisfies_buchberger_criterion(exact)) return std::nullopt;
  std::vector<Monomial> lms;
  for (const auto& e : exact) lms.push_back(e.leading_monomial());
  if (standard_monomials(lms).size() != variety.size()) return std::nullopt;
  for (const auto& e : exact) {
    const ApproxPolynomial ea = convert<Complex>(e);
    for (const auto& pt : variety.points) {
      if (pt.exact) {
        if (!evaluate(e, *pt.exact, pt.exact->conj()).is_zero()) return std::nullopt;
      } else if (std::abs(evaluate(ea, pt.z, pt.w())) > tol * evaluation_scale(ea, std::abs(pt.z))) {
        return std::nullopt;
      }
    }
  }
  if (!variety.source.is_zero()) {
    if (!normal_form(variety.source, exact).is_zero()) return std::nullopt;
    if (!normal_form(conjugate_poly(variety.source), exact).is_zero()) return std::nullopt;
  }
  detail::sort_by_leading_monomial(exact);
  return GroebnerBasis<GaussianRational>{std::move(exact), BasisSource::points};
}

/// Vanishing ideal of the points (z, conj z) of a variety: exact when every
/// point is Gaussian-rational or the floating basis can be certified exactly,
/// floating otherwise.
inline AnyBasis variety_ideal(const Variety& variety, double tol = kDefaultTol) {
  if (variety.points.empty()) return GroebnerBasis<GaussianRational>{{ExactPolynomial(GaussianRational(1))}, BasisSource::points};
  if (variety.all_exact()) {
    std::vector<GaussianRational> pts;
    for (const auto& p : variety.points) pts.push_back(*p.exact);
    return vanishing_ideal(pts);
  }
  std::vector<Complex> pts;
  for (const auto& p : variety.points) pts.push_back(p.z);
  auto approx = vanishing_ideal(pts);
  if (auto exact = certify_exact(approx, variety, std::max(tol, 1e-9))) return *exact;
  return approx;
}

inline std::vector<Monomial> leading_monomials(const AnyBasis& g) {
  return std::visit([](const auto& b) { return b.leading_monomials(); }, g);
}

inline std::size_t basis_size(const AnyBasis& g) {
  return std::visit([](const auto& b) { return b.size(); }, g);
}

inline bool is_exact(const AnyBasis& g) { return std::holds_alternative<GroebnerBasis<GaussianRational>>(g); }

inline std::vector<ApproxPolynomial> approx_elements(const AnyBasis& g) {
  return std::visit(
      [](const auto& b) {
        std::vector<ApproxPolynomial> out;
        for (const auto& e : b.elements) out.push_back(convert<Complex>(e));
        return out;
      },
      g);
}

}  // namespace mforge

#endif  // MOMENT_FORGE_GROEBNER_HPP
