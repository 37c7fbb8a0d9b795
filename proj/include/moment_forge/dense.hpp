#ifndef MOMENT_FORGE_DENSE_HPP
#define MOMENT_FORGE_DENSE_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "moment_forge/scalar.hpp"

namespace mforge {

/// Row-major dense matrix; used for exact elimination and as the storage of
/// moment matrices.
template <class F>
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const F& fill = F(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<F> data_;
};

namespace detail {
inline bool field_is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool field_is_zero(const GaussianRational& x) { return x.is_zero(); }
}  // namespace detail

/// Exact determinant by Gaussian elimination over the field F.
template <class F>
F determinant(DenseMatrix<F> a) {
  const std::size_t n = a.rows();
  F det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && detail::field_is_zero(a(piv, col))) ++piv;
    if (piv == n) return F(0);
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
      det = F(0) - det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (detail::field_is_zero(a(r, col))) continue;
      const F f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

/// Reduced row echelon form in place, scanning columns in the given order.
/// Returns the pivot columns, one per nonzero row.
template <class F>
std::vector<std::size_t> rref_in_place(DenseMatrix<F>& a, const std::vector<std::size_t>& column_order) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col : column_order) {
    if (row == a.rows()) break;
    std::size_t piv = row;
    while (piv < a.rows() && detail::field_is_zero(a(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(piv, c), a(row, c));
    const F inv = F(1) / a(row, col);
    for (std::size_t c = 0; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || detail::field_is_zero(a(r, col))) continue;
      const F f = a(r, col);
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t exact_rank(DenseMatrix<F> a) {
  std::vector<std::size_t> order(a.cols());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return rref_in_place(a, order).size();
}

/// Basis of {x : A x = 0}, one vector per free column.
template <class F>
std::vector<std::vector<F>> exact_nullspace(DenseMatrix<F> a) {
  std::vector<std::size_t> order(a.cols());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto pivots = rref_in_place(a, order);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(a.cols(), F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F(0) - a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Exact positive-semidefiniteness of a Hermitian matrix by symmetric pivoted
/// elimination: pivot on a positive diagonal entry and pass to the Schur
/// complement. A negative diagonal, or a zero diagonal with a nonzero entry in
/// its row, certifies indefiniteness.
inline bool exact_is_psd(DenseMatrix<GaussianRational> a) {
  std::vector<std::size_t> alive(a.rows());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  while (!alive.empty()) {
    std::size_t best = alive.size();
    for (std::size_t t = 0; t < alive.size(); ++t) {
      const auto& d = a(alive[t], alive[t]);
      if (sgn(d.re()) < 0) return false;
      if (sgn(d.re()) > 0 && best == alive.size()) best = t;
    }
    if (best == alive.size()) {
      for (auto r : alive)
        for (auto c : alive)
          if (!a(r, c).is_zero()) return false;
      return true;
    }
    const std::size_t p = alive[best];
    const GaussianRational piv = a(p, p);
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(best));
    for (auto r : alive) {
      if (a(r, p).is_zero()) continue;
      const GaussianRational f = a(r, p) / piv;
      for (auto c : alive) a(r, c) -= f * a(p, c);
    }
  }
  return true;
}

template <class F>
Eigen::MatrixXcd to_eigen(const DenseMatrix<F>& m) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = to_complex(m(r, c));
  return out;
}

}  // namespace mforge

#endif  // MOMENT_FORGE_DENSE_HPP
