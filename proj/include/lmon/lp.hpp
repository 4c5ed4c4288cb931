#pragma once

// Exact rational simplex (two-phase, Bland's rule).

#include "lmon/scalar.hpp"

namespace lmon {

enum class LPStatus { optimal, infeasible, unbounded };

struct LPResult {
  LPStatus status = LPStatus::infeasible;
  QVector x;       // primal solution (optimal)
  Rational value;  // objective value (optimal)
  // infeasible: f with f^T A <= 0 and f^T b > 0
  QVector farkas;
};

// minimize c^T x  subject to  A x = b, x >= 0
LPResult simplex(const QMatrix& A, const QVector& b, const QVector& c);

// f certifies infeasibility of {A x = b, x >= 0}
bool check_farkas(const QMatrix& A, const QVector& b, const QVector& f);

}  // namespace lmon
