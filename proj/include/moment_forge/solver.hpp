#ifndef MOMENT_FORGE_SOLVER_HPP
#define MOMENT_FORGE_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "moment_forge/conditions.hpp"
#include "moment_forge/groebner.hpp"
#include "moment_forge/moment.hpp"
#include "moment_forge/variety.hpp"

namespace mforge {

template <Scalar S>
struct Atom {
  S z;
  S density;  ///< real and positive
};

template <Scalar S>
struct AtomicMeasure {
  std::vector<Atom<S>> atoms;
  std::size_t size() const { return atoms.size(); }
};

/// gamma_ij = sum of rho_l conj(z_l)^i z_l^j; exact for exact atoms.
template <Scalar S>
MomentSequence<S> generate_moments(const AtomicMeasure<S>& mu, int k) {
  if (mu.atoms.empty()) throw Error("solver", "measure has no atoms");
  for (std::size_t l = 0; l < mu.atoms.size(); ++l) {
    const auto& d = mu.atoms[l].density;
    bool positive;
    if constexpr (is_exact_v<S>) positive = d.is_real() && sgn(d.re()) > 0;
    else positive = d.imag() == 0 && d.real() > 0;
    if (!positive) throw Error("solver", "atom " + std::to_string(l) + " has a density that is not real and positive");
    for (std::size_t t = 0; t < l; ++t)
      if (mu.atoms[t].z == mu.atoms[l].z) throw Error("solver", "atoms " + std::to_string(t) + " and " + std::to_string(l) + " coincide");
  }
  std::map<std::pair<int, int>, S> entries;
  for (int i = 0; i <= 2 * k; ++i)
    for (int j = 0; i + j <= 2 * k; ++j) {
      S acc(0);
      for (const auto& a : mu.atoms) acc += a.density * power(conj(a.z), i) * power(a.z, j);
      entries[{i, j}] = acc;
    }
  if constexpr (!is_exact_v<S>) {
    // make the Hermitian symmetry exact in floating point
    for (auto& [idx, v] : entries) {
      if (idx.first == idx.second) v = Complex(v.real(), 0);
      else if (idx.first > idx.second) v = std::conj(entries.at({idx.second, idx.first}));
    }
  }
  return MomentSequence<S>(k, std::move(entries));
}

namespace detail {

/// Zero test for a value computed from moments: exact when both inputs are
/// exact, otherwise relative to the size of the terms that produced it.
template <Scalar R>
bool negligible(const R& value, double scale, double tol) {
  if constexpr (is_exact_v<R>) return value.is_zero();
  else return std::abs(value) <= tol * scale;
}

template <Scalar S, Scalar T>
double riesz_scale(const MomentSequence<S>& gamma, const Polynomial<T>& p) {
  double s = 0;
  for (const auto& [m, c] : p.terms()) s += magnitude(c) * magnitude(gamma(m.a, m.b));
  return s;
}

}  // namespace detail

struct StrictConsistency {
  bool pass = true;
  std::size_t checked = 0;
  double worst = 0;  ///< largest relative |Lambda(m g)|
};

/// Lambda(m g) = 0 for every element g and monomial m with deg(m g) <= 2k.
template <Scalar S, Scalar T>
StrictConsistency strict_consistency(const MomentSequence<S>& gamma, const std::vector<Polynomial<T>>& basis, int k,
                                     double tol) {
  StrictConsistency out;
  for (const auto& g : basis) {
    const int room = 2 * k - g.degree();
    if (g.degree() > k) throw Error("solver", "basis element of degree above k");
    for (const auto& m : label_monomials(room)) {
      const auto mg = g.times_term(m, T(1));
      const auto value = riesz(gamma, mg);
      const double scale = detail::riesz_scale(gamma, mg);
      ++out.checked;
      if (!detail::negligible(value, scale, tol)) out.pass = false;
      if (scale > 0) out.worst = std::max(out.worst, std::abs(to_complex(value)) / scale);
    }
  }
  return out;
}

template <Scalar S>
struct Representation {
  std::vector<Polynomial<S>> quotients;
  int max_quotient_degree = -1;
  bool within_bound = true;  ///< every quotient has degree <= k
};

/// p = sum a_j g_j by division; errors when p is not in the ideal.
template <Scalar S>
Representation<S> representation_decompose(const Polynomial<S>& p, const std::vector<Polynomial<S>>& basis, int k,
                                            double tol = kDefaultTol) {
  if (p.degree() > 2 * k) throw Error("solver", "polynomial degree exceeds 2k");
  auto division = divide(p, basis);
  bool in_ideal;
  if constexpr (is_exact_v<S>) in_ideal = division.remainder.is_zero();
  else in_ideal = max_coefficient(division.remainder) <= tol * std::max(1.0, max_coefficient(p));
  if (!in_ideal)
    throw Error("solver", "polynomial is not in the ideal; normal form " + to_string(division.remainder));
  Representation<S> out;
  out.quotients = std::move(division.quotients);
  for (const auto& q : out.quotients) out.max_quotient_degree = std::max(out.max_quotient_degree, q.degree());
  out.within_bound = out.max_quotient_degree <= k;
  return out;
}

struct ExtractionResult {
  AtomicMeasure<Complex> measure;
  double residual = 0;  ///< |A rho - gamma| / |gamma|
  std::size_t dropped = 0;
};

/// Least squares over all moments i + j <= 2k for real densities on the
/// points of the variety.
template <Scalar S>
ExtractionResult extract_measure(const MomentSequence<S>& gamma, const Variety& variety, double tol) {
  if (variety.points.empty()) throw Error("solver", "no representing measure supported on an empty variety");
  const int k = gamma.k();
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i <= 2 * k; ++i)
    for (int j = 0; i + j <= 2 * k; ++j) idx.push_back({i, j});
  const auto rows = static_cast<Eigen::Index>(idx.size());
  const auto cols = static_cast<Eigen::Index>(variety.size());
  Eigen::MatrixXd a(2 * rows, cols);
  Eigen::VectorXd b(2 * rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto [i, j] = idx[static_cast<std::size_t>(r)];
    double row_scale = 1;
    std::vector<Complex> vals;
    for (const auto& pt : variety.points) {
      vals.push_back(std::pow(pt.w(), i) * std::pow(pt.z, j));
      row_scale = std::max(row_scale, std::abs(vals.back()));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      a(2 * r, c) = vals[static_cast<std::size_t>(c)].real() / row_scale;
      a(2 * r + 1, c) = vals[static_cast<std::size_t>(c)].imag() / row_scale;
    }
    const Complex g = to_complex(gamma(i, j));
    b(2 * r) = g.real() / row_scale;
    b(2 * r + 1) = g.imag() / row_scale;
  }
  const Eigen::VectorXd rho = a.colPivHouseholderQr().solve(b);

  ExtractionResult out;
  const double mass = to_complex(gamma(0, 0)).real();
  double err = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto [i, j] = idx[static_cast<std::size_t>(r)];
    Complex acc = 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& pt = variety.points[static_cast<std::size_t>(c)];
      acc += rho(c) * std::pow(pt.w(), i) * std::pow(pt.z, j);
    }
    err += std::norm(acc - to_complex(gamma(i, j)));
  }
  out.residual = std::sqrt(err) / gamma.norm();
  if (out.residual > tol)
    throw Error("solver", "no representing measure supported on the variety (residual " + format_double(out.residual) + ")");
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (rho(c) < -tol * mass)
      throw Error("solver", "no representing measure supported on the variety (negative density " + format_double(rho(c)) + ")");
    if (std::fabs(rho(c)) <= tol * mass) {
      ++out.dropped;
      continue;
    }
    out.measure.atoms.push_back({variety.points[static_cast<std::size_t>(c)].z, Complex(rho(c), 0)});
  }
  return out;
}

/// The variety of p and the vanishing ideal of its points; independent of the
/// moments, so it can be shared between many checks against the same relation.
struct RelationAnalysis {
  AnyPolynomial relation;
  Variety variety;
  AnyBasis basis;
};

inline RelationAnalysis analyze_relation(const AnyPolynomial& p, double tol = kDefaultTol) {
  Variety v = solve_conjugate_system(p, tol);
  if (!v.all_simple()) throw Error("solver", "variety has a non-simple point; outside the extremal pipeline");
  AnyBasis g = variety_ideal(v, tol);
  return {p, std::move(v), std::move(g)};
}

enum class Verdict { yes, no, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct ElementCheck {
  ApproxPolynomial g;
  Complex lambda_g, lambda_zg;  ///< Lambda(g), Lambda(z g)
  bool condition2 = false;
  std::optional<double> relation_residual;  ///< |M g| / (|M| |g|), when deg g <= k
  std::optional<bool> condition3;
};

struct CheckReport {
  int k = 0;
  PsdReport psd;
  std::size_t rank = 0, nullity = 0, v = 0;
  bool extremal = false;
  double relation_residual = 0;  ///< of the input relation p
  Variety variety;
  AnyBasis basis;
  std::vector<Monomial> relation_leading_monomials;
  std::vector<ElementCheck> elements;
  bool condition2 = false, condition3 = false;
  StrictConsistency strict;
  std::vector<std::string> findings;
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
  std::optional<ExtractionResult> extraction;
};

namespace detail {

template <Scalar S, Scalar T>
void check_elements(CheckReport& rep, const MomentSequence<S>& gamma, const MomentMatrix<S>& m,
                    const std::vector<Polynomial<T>>& basis, double tol) {
  using R = promote_t<S, T>;
  const int k = gamma.k();
  rep.condition2 = rep.condition3 = true;
  for (const auto& g : basis) {
    ElementCheck e;
    e.g = convert<Complex>(g);
    const auto zg = g.times_term({0, 1}, T(1));
    const R lg = riesz(gamma, g), lzg = riesz(gamma, zg);
    e.lambda_g = to_complex(lg);
    e.lambda_zg = to_complex(lzg);
    e.condition2 = negligible(lg, riesz_scale(gamma, g), tol) && negligible(lzg, riesz_scale(gamma, zg), tol);
    if (g.degree() <= k) {
      const auto gv = coefficient_vector(g, k);
      if constexpr (is_exact_v<R>) {
        bool zero = true;
        for (std::size_t r = 0; r < m.size() && zero; ++r) {
          GaussianRational acc(0);
          for (std::size_t c = 0; c < m.size(); ++c) acc += m(r, c) * gv[c];
          zero = acc.is_zero();
        }
        e.condition3 = zero;
        e.relation_residual = relation_residual(m.data, gv);
      } else {
        const double res = relation_residual(m.data, gv);
        e.relation_residual = res;
        e.condition3 = res <= tol;
      }
      rep.condition3 = rep.condition3 && *e.condition3;
    }
    rep.condition2 = rep.condition2 && e.condition2;
    rep.elements.push_back(std::move(e));
  }
  rep.strict = strict_consistency(gamma, basis, k, tol);
}

}  // namespace detail

/// Positivity, variety, vanishing ideal, rank, the conditions Lambda(g) = 0,
/// Lambda(z g) = 0 and g(Z, Zbar) = 0 for every basis element, full
/// consistency, and finally extraction.
///
/// Verdict: no when M(k) is not PSD or any of those conditions fails (each is
/// necessary once p is a column relation); inconclusive when r != v; otherwise
/// yes if extraction succeeds.
template <Scalar S>
CheckReport check_extremal(const MomentSequence<S>& gamma, const RelationAnalysis& analysis, double tol) {
  CheckReport rep;
  rep.k = gamma.k();
  const auto p = convert<Complex>(analysis.relation);
  if (p.degree() > rep.k) throw Error("solver", "relation degree exceeds k");
  const MomentMatrix<S> m = build_moment_matrix(gamma);
  rep.psd = psd_check(m, tol);
  rep.rank = numeric_rank(m, tol);
  rep.nullity = m.size() - rep.rank;
  for (const auto& rel : column_relations(m, tol)) rep.relation_leading_monomials.push_back(rel.poly.leading_monomial());
  {
    std::vector<Complex> pv(m.size(), Complex(0));
    for (const auto& [mono, c] : p.terms()) pv[label_index(mono)] = c;
    rep.relation_residual = detail::relation_residual(m.data, pv);
  }
  rep.variety = analysis.variety;
  rep.basis = analysis.basis;
  rep.v = rep.variety.size();
  rep.extremal = rep.rank == rep.v;

  std::visit([&](const auto& b) { detail::check_elements(rep, gamma, m, b.elements, tol); }, rep.basis);

  if (rep.condition2 != rep.strict.pass)
    rep.findings.push_back(std::string("condition (2) ") + (rep.condition2 ? "passes" : "fails") +
                           " while strict consistency " + (rep.strict.pass ? "passes" : "fails"));
  if (rep.condition2 != rep.condition3)
    rep.findings.push_back(std::string("condition (2) ") + (rep.condition2 ? "passes" : "fails") + " while condition (3) " +
                           (rep.condition3 ? "passes" : "fails"));

  if (!rep.psd.psd) {
    rep.verdict = Verdict::no;
    rep.reason = "M(k) is not positive semidefinite";
  } else if (!rep.condition2 || !rep.condition3 || !rep.strict.pass) {
    rep.verdict = Verdict::no;
    rep.reason = !rep.condition2   ? "Lambda(g) or Lambda(z g) is nonzero for some basis element"
                 : !rep.condition3 ? "some basis element is not a column relation"
                                   : "moments are not consistent with the variety";
  } else if (!rep.extremal) {
    rep.verdict = Verdict::inconclusive;
    rep.reason = "rank " + std::to_string(rep.rank) + " differs from the variety size " + std::to_string(rep.v) +
                 "; not extremal";
  } else {
    try {
      rep.extraction = extract_measure(gamma, rep.variety, tol);
      rep.verdict = Verdict::yes;
      rep.reason = "representing measure with " + std::to_string(rep.extraction->measure.size()) + " atoms";
    } catch (const Error& e) {
      rep.verdict = Verdict::no;
      rep.reason = e.what();
    }
  }
  return rep;
}

template <Scalar S>
CheckReport check_extremal(const MomentSequence<S>& gamma, const AnyPolynomial& p, double tol = kDefaultTol) {
  return check_extremal(gamma, analyze_relation(p, tol), tol);
}

}  // namespace mforge

#endif  // MOMENT_FORGE_SOLVER_HPP
