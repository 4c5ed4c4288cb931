#include "lmon/lp.hpp"

#include <stdexcept>
#include <vector>

namespace lmon {

namespace {

struct Tableau {
  QMatrix T;  // last row: reduced costs, last column: rhs
  std::vector<Eigen::Index> basis;
  Eigen::Index m, width;

  void pivot(Eigen::Index r, Eigen::Index c) {
    Rational inv = Rational(1) / T(r, c);
    for (Eigen::Index j = 0; j < T.cols(); ++j)
      if (T(r, j) != 0) T(r, j) *= inv;
    for (Eigen::Index i = 0; i < T.rows(); ++i) {
      if (i == r || T(i, c) == 0) continue;
      Rational f = T(i, c);
      for (Eigen::Index j = 0; j < T.cols(); ++j)
        if (T(r, j) != 0) T(i, j) -= f * T(r, j);
    }
    basis[static_cast<std::size_t>(r)] = c;
  }

  // Bland's rule over columns [0, allowed); returns false if unbounded.
  bool run(Eigen::Index allowed) {
    const Eigen::Index rhs = T.cols() - 1;
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed; ++j)
        if (T(m, j) < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      Rational best;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (T(i, enter) <= 0) continue;
        Rational ratio = T(i, rhs) / T(i, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LPResult simplex(const QMatrix& A, const QVector& b, const QVector& c) {
  const Eigen::Index m = A.rows(), n = A.cols();
  if (b.size() != m || c.size() != n) throw std::invalid_argument("simplex: dimension mismatch");
  std::vector<int> sgn(static_cast<std::size_t>(m), 1);
  Tableau tab;
  tab.m = m;
  tab.T = zeros<Rational>(m + 1, n + m + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  const Eigen::Index rhs = n + m;
  for (Eigen::Index i = 0; i < m; ++i) {
    int s = b(i) < 0 ? -1 : 1;
    sgn[static_cast<std::size_t>(i)] = s;
    for (Eigen::Index j = 0; j < n; ++j) tab.T(i, j) = s < 0 ? Rational(-A(i, j)) : A(i, j);
    tab.T(i, n + i) = 1;
    tab.T(i, rhs) = s < 0 ? Rational(-b(i)) : b(i);
    tab.basis[static_cast<std::size_t>(i)] = n + i;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    Rational s = 0;
    for (Eigen::Index i = 0; i < m; ++i) s += tab.T(i, j);
    tab.T(m, j) = -s;
  }
  {
    Rational s = 0;
    for (Eigen::Index i = 0; i < m; ++i) s += tab.T(i, rhs);
    tab.T(m, rhs) = -s;
  }
  tab.run(n + m);

  LPResult res;
  Rational w = -tab.T(m, rhs);
  if (w > 0) {
    res.status = LPStatus::infeasible;
    res.farkas = QVector(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      Rational y = Rational(1) - tab.T(m, n + i);
      res.farkas(i) = sgn[static_cast<std::size_t>(i)] < 0 ? Rational(-y) : y;
    }
    return res;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < n) continue;
    for (Eigen::Index j = 0; j < n; ++j)
      if (tab.T(i, j) != 0) {
        tab.pivot(i, j);
        break;
      }
  }
  for (Eigen::Index j = 0; j < n + m; ++j) {
    Rational rc = j < n ? c(j) : Rational(0);
    for (Eigen::Index i = 0; i < m; ++i) {
      Eigen::Index bj = tab.basis[static_cast<std::size_t>(i)];
      if (bj < n && c(bj) != 0) rc -= c(bj) * tab.T(i, j);
    }
    tab.T(m, j) = rc;
  }
  {
    Rational v = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      Eigen::Index bj = tab.basis[static_cast<std::size_t>(i)];
      if (bj < n) v += c(bj) * tab.T(i, rhs);
    }
    tab.T(m, rhs) = -v;
  }
  if (!tab.run(n)) {
    res.status = LPStatus::unbounded;
    return res;
  }
  res.status = LPStatus::optimal;
  res.x = zeros<Rational>(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index bj = tab.basis[static_cast<std::size_t>(i)];
    if (bj < n) res.x(bj) = tab.T(i, rhs);
  }
  res.value = 0;
  for (Eigen::Index j = 0; j < n; ++j) res.value += c(j) * res.x(j);
  return res;
}

bool check_farkas(const QMatrix& A, const QVector& b, const QVector& f) {
  if (f.size() != A.rows() || b.size() != A.rows()) return false;
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    Rational s = 0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) s += f(i) * A(i, j);
    if (s > 0) return false;
  }
  Rational fb = 0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) fb += f(i) * b(i);
  return fb > 0;
}

}  // namespace lmon
