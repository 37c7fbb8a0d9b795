#ifndef MOMENT_FORGE_MOMENT_HPP
#define MOMENT_FORGE_MOMENT_HPP

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "moment_forge/dense.hpp"
#include "moment_forge/polynomial.hpp"

namespace mforge {

/// gamma_ij = integral of conj(z)^i z^j, for all i + j <= 2k. The Riesz
/// functional sends w^i z^j to gamma_ij.
template <Scalar S>
class MomentSequence {
public:
  using Index = std::pair<int, int>;

  MomentSequence() = default;

  /// Validates completeness, Hermitian symmetry and gamma_00 > 0.
  MomentSequence(int k, std::map<Index, S> entries) : k_(k), entries_(std::move(entries)) {
    if (k_ < 1) throw Error("moment", "k must be a positive integer");
    for (const auto& [idx, v] : entries_)
      if (idx.first < 0 || idx.second < 0 || idx.first + idx.second > 2 * k_)
        throw Error("moment", "index " + index_text(idx) + " outside i+j <= 2k");
    for (int i = 0; i <= 2 * k_; ++i)
      for (int j = 0; i + j <= 2 * k_; ++j) {
        if (!entries_.contains({i, j})) throw Error("moment", "missing moment " + index_text({i, j}));
      }
    for (const auto& [idx, v] : entries_) {
      const S& partner = entries_.at({idx.second, idx.first});
      if (!hermitian_match(v, partner))
        throw Error("moment", "gamma" + index_text(idx) + " is not the conjugate of gamma" +
                                  index_text({idx.second, idx.first}));
    }
    const S& g00 = entries_.at({0, 0});
    if constexpr (is_exact_v<S>) {
      if (!g00.is_real() || sgn(g00.re()) <= 0) throw Error("moment", "gamma(0,0) must be real and positive");
    } else {
      if (!(g00.real() > 0) || std::fabs(g00.imag()) > 1e-12 * g00.real())
        throw Error("moment", "gamma(0,0) must be real and positive");
    }
  }

  int k() const { return k_; }
  const S& operator()(int i, int j) const {
    auto it = entries_.find({i, j});
    if (it == entries_.end()) throw Error("moment", "no moment " + index_text({i, j}));
    return it->second;
  }
  const std::map<Index, S>& entries() const { return entries_; }

  /// Euclidean norm over all stored entries.
  double norm() const {
    double s = 0;
    for (const auto& [idx, v] : entries_) s += std::norm(to_complex(v));
    return std::sqrt(s);
  }

  static std::string index_text(const Index& idx) {
    return "(" + std::to_string(idx.first) + "," + std::to_string(idx.second) + ")";
  }

private:
  static bool hermitian_match(const S& a, const S& b) {
    if constexpr (is_exact_v<S>) return a == b.conj();
    else return std::abs(a - std::conj(b)) <= 1e-12 * std::max(1.0, std::abs(a));
  }

  int k_ = 0;
  std::map<Index, S> entries_;
};

using AnyMomentSequence = std::variant<MomentSequence<GaussianRational>, MomentSequence<Complex>>;

template <Scalar To, Scalar From>
MomentSequence<To> convert(const MomentSequence<From>& g) {
  if constexpr (std::same_as<To, From>) {
    return g;
  } else {
    std::map<std::pair<int, int>, To> out;
    for (const auto& [idx, v] : g.entries()) out[idx] = scalar_cast<To>(v);
    return MomentSequence<To>(g.k(), std::move(out));
  }
}

/// Lambda(p) = sum of c * gamma_{a,b} over the terms c w^a z^b.
template <Scalar S, Scalar T>
promote_t<S, T> riesz(const MomentSequence<S>& gamma, const Polynomial<T>& p) {
  using R = promote_t<S, T>;
  if (p.degree() > 2 * gamma.k())
    throw Error("moment", "degree " + std::to_string(p.degree()) + " exceeds 2k = " + std::to_string(2 * gamma.k()));
  R acc(0);
  for (const auto& [m, c] : p.terms()) acc += scalar_cast<R>(c) * scalar_cast<R>(gamma(m.a, m.b));
  return acc;
}

/// M(k): rows and columns labelled 1, Z, Zbar, Z^2, Zbar Z, Zbar^2, ...; the
/// entry at row w^a z^b, column w^c z^d is gamma_{b+c, a+d}.
template <Scalar S>
struct MomentMatrix {
  int k = 0;
  DenseMatrix<S> data;
  std::vector<Monomial> labels;

  std::size_t size() const { return labels.size(); }
  const S& operator()(std::size_t r, std::size_t c) const { return data(r, c); }
};

template <Scalar S>
MomentMatrix<S> build_moment_matrix(const MomentSequence<S>& gamma, int k) {
  if (k < 0 || k > gamma.k()) throw Error("moment", "matrix order exceeds the moment sequence");
  MomentMatrix<S> m{k, DenseMatrix<S>(monomial_count(k), monomial_count(k), S(0)), label_monomials(k)};
  for (std::size_t r = 0; r < m.labels.size(); ++r)
    for (std::size_t c = 0; c < m.labels.size(); ++c) {
      const auto& row = m.labels[r];
      const auto& col = m.labels[c];
      m.data(r, c) = gamma(row.b + col.a, row.a + col.b);
    }
  return m;
}

template <Scalar S>
MomentMatrix<S> build_moment_matrix(const MomentSequence<S>& gamma) {
  return build_moment_matrix(gamma, gamma.k());
}

/// Coefficient vector of p in the label order of M(k).
template <Scalar S>
std::vector<S> coefficient_vector(const Polynomial<S>& p, int k) {
  if (p.degree() > k) throw Error("moment", "polynomial degree exceeds the matrix order");
  std::vector<S> v(monomial_count(k), S(0));
  for (const auto& [m, c] : p.terms()) v[label_index(m)] = c;
  return v;
}

template <Scalar S>
Polynomial<S> polynomial_from_vector(const std::vector<S>& v, int k) {
  const auto labels = label_monomials(k);
  Polynomial<S> p;
  for (std::size_t i = 0; i < v.size(); ++i) p.add_term(labels[i], v[i]);
  return p;
}

struct PsdReport {
  bool psd = false;
  bool strict_inner = false;  ///< M(k-1) positive definite
  double min_eigenvalue = 0;
};

namespace detail {

inline Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// Exact positive definiteness: every pivot of unpivoted LDL* is positive.
inline bool exact_is_pd(DenseMatrix<GaussianRational> a) {
  const std::size_t n = a.rows();
  for (std::size_t p = 0; p < n; ++p) {
    if (!a(p, p).is_real() || sgn(a(p, p).re()) <= 0) return false;
    for (std::size_t r = p + 1; r < n; ++r) {
      if (a(r, p).is_zero()) continue;
      const GaussianRational f = a(r, p) / a(p, p);
      for (std::size_t c = p; c < n; ++c) a(r, c) -= f * a(p, c);
    }
  }
  return true;
}

template <Scalar S>
DenseMatrix<S> leading_block(const DenseMatrix<S>& m, std::size_t n) {
  DenseMatrix<S> out(n, n, S(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = m(r, c);
  return out;
}

}  // namespace detail

/// Exact matrices are decided by exact elimination; floating ones by the
/// eigenvalues, with lambda_min >= -tol * lambda_max counting as PSD.
template <Scalar S>
PsdReport psd_check(const MomentMatrix<S>& m, double tol) {
  PsdReport out;
  const Eigen::VectorXd ev = detail::hermitian_eigenvalues(to_eigen(m.data));
  out.min_eigenvalue = ev.minCoeff();
  const double top = std::max(ev.maxCoeff(), 0.0);
  const std::size_t inner = monomial_count(m.k - 1);
  if constexpr (is_exact_v<S>) {
    out.psd = exact_is_psd(m.data);
    out.strict_inner = detail::exact_is_pd(detail::leading_block(m.data, inner));
  } else {
    out.psd = out.min_eigenvalue >= -tol * top;
    if (inner == 0) {
      out.strict_inner = true;
      return out;
    }
    const Eigen::VectorXd iv = detail::hermitian_eigenvalues(to_eigen(detail::leading_block(m.data, inner)));
    out.strict_inner = iv.minCoeff() > tol * std::max(iv.maxCoeff(), 0.0);
  }
  return out;
}

inline Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
}

/// Singular values above tol * sigma_max; exact matrices by elimination.
template <Scalar S>
std::size_t numeric_rank(const MomentMatrix<S>& m, double tol) {
  if constexpr (is_exact_v<S>) {
    return exact_rank(m.data);
  } else {
    const Eigen::VectorXd sv = singular_values(to_eigen(m.data));
    if (sv.size() == 0 || sv(0) == 0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol * sv(0)) ++r;
    return r;
  }
}

template <Scalar S>
struct ColumnRelation {
  Polynomial<S> poly;   ///< monic; leading monomial absent from the other relations
  std::vector<S> kernel;
  double residual = 0;  ///< |M p| / (|M| |p|)
};

namespace detail {

/// Label positions ordered by deglex, greatest monomial first.
inline std::vector<std::size_t> descending_label_order(int k) {
  const auto labels = label_monomials(k);
  std::vector<std::size_t> order(labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return labels[x] > labels[y]; });
  return order;
}

template <Scalar S, Scalar T>
double relation_residual(const DenseMatrix<S>& m, const std::vector<T>& v) {
  const Eigen::MatrixXcd a = to_eigen(m);
  Eigen::VectorXcd x(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = to_complex(v[i]);
  const double denom = a.norm() * x.norm();
  return denom == 0 ? 0.0 : (a * x).norm() / denom;
}

}  // namespace detail

/// Kernel of M(k), echelonised so that each relation is monic in its
/// deglex-greatest monomial and no leading monomial appears in another
/// relation.
template <Scalar S>
std::vector<ColumnRelation<S>> column_relations(const MomentMatrix<S>& m, double tol) {
  const std::size_t n = m.size();
  const auto order = detail::descending_label_order(m.k);
  std::vector<std::vector<S>> rows;
  if constexpr (is_exact_v<S>) {
    const auto kernel = exact_nullspace(m.data);
    DenseMatrix<GaussianRational> k(kernel.size(), n, GaussianRational(0));
    for (std::size_t r = 0; r < kernel.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) k(r, c) = kernel[r][c];
    rref_in_place(k, order);
    for (std::size_t r = 0; r < kernel.size(); ++r) {
      std::vector<GaussianRational> v(n);
      for (std::size_t c = 0; c < n; ++c) v[c] = k(r, c);
      rows.push_back(std::move(v));
    }
  } else {
    const Eigen::MatrixXcd a = to_eigen(m.data);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(0) > 0 && sv(i) > tol * sv(0)) ++rank;
    Eigen::MatrixXcd k = svd.matrixV().rightCols(static_cast<Eigen::Index>(n) - rank).transpose();
    // Gauss-Jordan with partial pivoting, greatest monomial first
    Eigen::Index row = 0;
    std::vector<std::size_t> pivot_rank;  // position in order of each row's pivot
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const std::size_t col = order[pos];
      if (row == k.rows()) break;
      const auto c = static_cast<Eigen::Index>(col);
      Eigen::Index piv;
      const double best = k.col(c).segment(row, k.rows() - row).cwiseAbs().maxCoeff(&piv);
      if (best <= 1e-7) continue;
      piv += row;
      k.row(piv).swap(k.row(row));
      k.row(row) /= k(row, c);
      for (Eigen::Index r = 0; r < k.rows(); ++r)
        if (r != row) k.row(r) -= k(r, c) * k.row(row);
      pivot_rank.push_back(pos);
      ++row;
    }
    for (Eigen::Index r = 0; r < row; ++r) {
      std::vector<Complex> v(n);
      // entries at rounding level are noise from the elimination
      for (std::size_t c = 0; c < n; ++c) {
        const Complex x = k(r, static_cast<Eigen::Index>(c));
        v[c] = std::abs(x) <= 1e-13 ? Complex(0) : x;
      }
      // and everything above the pivot is zero by construction
      for (std::size_t pos = 0; pos < pivot_rank[static_cast<std::size_t>(r)]; ++pos) v[order[pos]] = Complex(0);
      rows.push_back(std::move(v));
    }
  }
  std::vector<ColumnRelation<S>> out;
  for (auto& v : rows) {
    ColumnRelation<S> rel;
    rel.poly = polynomial_from_vector(v, m.k);
    if (rel.poly.is_zero()) continue;
    rel.residual = detail::relation_residual(m.data, v);
    rel.kernel = std::move(v);
    out.push_back(std::move(rel));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.poly.leading_monomial() > y.poly.leading_monomial(); });
  return out;
}

}  // namespace mforge

#endif  // MOMENT_FORGE_MOMENT_HPP
