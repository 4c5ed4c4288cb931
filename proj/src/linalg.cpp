#include "lmon/linalg.hpp"

#include <stdexcept>

namespace lmon {

std::vector<IntVector> canonical_row_basis(const std::vector<IntVector>& rows, Eigen::Index dim) {
  if (rows.empty()) return {};
  QMatrix a = to_rational(from_rows(rows, dim));
  auto piv = rref_inplace(a);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < piv.size(); ++i)
    out.push_back(primitive(QVector(a.row(static_cast<Eigen::Index>(i)).transpose())));
  return out;
}

std::vector<IntVector> orthogonal_complement(const std::vector<IntVector>& vectors, Eigen::Index dim) {
  QMatrix a = vectors.empty() ? zeros<Rational>(0, dim) : to_rational(from_rows(vectors, dim));
  QMatrix ns = nullspace(a);
  std::vector<IntVector> rows;
  for (Eigen::Index j = 0; j < ns.cols(); ++j) rows.push_back(primitive(QVector(ns.col(j))));
  return canonical_row_basis(rows, dim);
}

QMatrix inverse(const QMatrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse: non-square");
  QMatrix aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = identity<Rational>(n);
  auto piv = rref_inplace(aug);
  if (static_cast<Eigen::Index>(piv.size()) < n || piv[static_cast<std::size_t>(n - 1)] != n - 1)
    throw std::invalid_argument("inverse: singular");
  return aug.rightCols(n);
}

}  // namespace lmon
