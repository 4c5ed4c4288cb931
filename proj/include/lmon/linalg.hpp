#pragma once

// Dense linear algebra over an exact field (Rational) and fraction-free
// helpers over the integers.

#include "lmon/scalar.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace lmon {

// Reduced row echelon form; returns pivot columns.
template <typename F>
std::vector<Eigen::Index> rref_inplace(Mat<F>& a) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < a.rows(); ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) a.row(p).swap(a.row(r));
    F inv = F(1) / a(r, c);
    for (Eigen::Index j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      F f = a(i, c);
      for (Eigen::Index j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <typename F>
Eigen::Index rank(Mat<F> a) {
  return static_cast<Eigen::Index>(rref_inplace(a).size());
}

inline Eigen::Index rank(const IntMatrix& a) { return rank(to_rational(a)); }

// Basis (columns) of {x : a x = 0}.
template <typename F>
Mat<F> nullspace(Mat<F> a) {
  const Eigen::Index n = a.cols();
  auto piv = rref_inplace(a);
  std::vector<bool> is_piv(static_cast<std::size_t>(n), false);
  for (auto c : piv) is_piv[static_cast<std::size_t>(c)] = true;
  Mat<F> basis = zeros<F>(n, n - static_cast<Eigen::Index>(piv.size()));
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_piv[static_cast<std::size_t>(f)]) continue;
    basis(f, k) = F(1);
    for (std::size_t i = 0; i < piv.size(); ++i) basis(piv[i], k) = -a(static_cast<Eigen::Index>(i), f);
    ++k;
  }
  return basis;
}

// Some solution of a x = b, if any.
template <typename F>
std::optional<Vec<F>> solve(const Mat<F>& a, const Vec<F>& b) {
  Mat<F> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto piv = rref_inplace(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  Vec<F> x = zeros<F>(a.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) x(piv[i]) = aug(static_cast<Eigen::Index>(i), a.cols());
  return x;
}

// Determinant by fraction-free (Bareiss) elimination.
template <typename R>
R determinant(Mat<R> a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return R(1);
  R sgn = 1, prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index p = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return R(0);
      a.row(p).swap(a.row(k));
      sgn = -sgn;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sgn * a(n - 1, n - 1);
}

// Rows spanning the same space, in canonical (integer-scaled RREF) form.
std::vector<IntVector> canonical_row_basis(const std::vector<IntVector>& rows, Eigen::Index dim);

// Integer basis of the orthogonal complement of span(vectors) in Q^dim,
// canonical (integer-scaled RREF).
std::vector<IntVector> orthogonal_complement(const std::vector<IntVector>& vectors, Eigen::Index dim);

QMatrix inverse(const QMatrix& a);  // throws if singular

}  // namespace lmon
