#include "lmon/lattice.hpp"

#include "lmon/linalg.hpp"

#include <set>
#include <stdexcept>

namespace lmon {

namespace {

struct SmithWork {
  IntMatrix D, U, Uinv, V, Vinv;

  void swap_rows(Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    D.row(a).swap(D.row(b));
    U.row(a).swap(U.row(b));
    Uinv.col(a).swap(Uinv.col(b));
  }
  void swap_cols(Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    D.col(a).swap(D.col(b));
    V.col(a).swap(V.col(b));
    Vinv.row(a).swap(Vinv.row(b));
  }
  // row i -= q * row t
  void row_sub(Eigen::Index i, Eigen::Index t, const Integer& q) {
    D.row(i) -= q * D.row(t);
    U.row(i) -= q * U.row(t);
    Uinv.col(t) += q * Uinv.col(i);
  }
  // col j -= q * col t
  void col_sub(Eigen::Index j, Eigen::Index t, const Integer& q) {
    D.col(j) -= q * D.col(t);
    V.col(j) -= q * V.col(t);
    Vinv.row(t) += q * Vinv.row(j);
  }
  void negate_row(Eigen::Index t) {
    D.row(t) = -D.row(t);
    U.row(t) = -U.row(t);
    Uinv.col(t) = -Uinv.col(t);
  }
};

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (Eigen::Index i = 0; i < rank; ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& M) {
  const Eigen::Index m = M.rows(), n = M.cols();
  SmithWork w{M, identity<Integer>(m), identity<Integer>(m), identity<Integer>(n), identity<Integer>(n)};
  Eigen::Index t = 0;
  for (; t < std::min(m, n); ++t) {
    bool found_any = true;
    for (;;) {
      Eigen::Index pi = -1, pj = -1;
      Integer best = 0;
      for (Eigen::Index i = t; i < m; ++i)
        for (Eigen::Index j = t; j < n; ++j) {
          if (w.D(i, j) == 0) continue;
          Integer a = abs(w.D(i, j));
          if (pi < 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        found_any = false;
        break;
      }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (w.D(i, t) == 0) continue;
        w.row_sub(i, t, Integer(w.D(i, t) / w.D(t, t)));
        if (w.D(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (w.D(t, j) == 0) continue;
        w.col_sub(j, t, Integer(w.D(t, j) / w.D(t, t)));
        if (w.D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (w.D(i, j) % w.D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      // row t += row bad
      w.row_sub(t, bad, Integer(-1));
    }
    if (!found_any) break;
    if (w.D(t, t) < 0) w.negate_row(t);
  }
  SmithForm s;
  s.U = std::move(w.U);
  s.D = std::move(w.D);
  s.V = std::move(w.V);
  s.Uinv = std::move(w.Uinv);
  s.Vinv = std::move(w.Vinv);
  s.rank = t;
  return s;
}

FGAbelianGroup FGAbelianGroup::free(Eigen::Index rank) { return from_invariants(rank, {}); }

FGAbelianGroup FGAbelianGroup::from_invariants(Eigen::Index free_rank, std::vector<Integer> torsion) {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) throw std::invalid_argument("invariant factors must be >= 2");
    if (i > 0 && torsion[i] % torsion[i - 1] != 0)
      throw std::invalid_argument("invariant factors must form a divisibility chain");
  }
  FGAbelianGroup g;
  g.free_rank = free_rank;
  g.invariant_factors = std::move(torsion);
  g.basis_change = identity<Integer>(g.dim());
  g.section = identity<Integer>(g.dim());
  return g;
}

Integer FGAbelianGroup::exponent() const {
  return invariant_factors.empty() ? Integer(1) : invariant_factors.back();
}

Integer FGAbelianGroup::torsion_order() const {
  Integer o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

IntVector FGAbelianGroup::reduce(IntVector v) const {
  if (v.size() != dim()) throw std::invalid_argument("group element has wrong length");
  for (Eigen::Index i = 0; i < torsion_rank(); ++i)
    v(free_rank + i) = mod_floor(v(free_rank + i), invariant_factors[static_cast<std::size_t>(i)]);
  return v;
}

IntMatrix FGAbelianGroup::relations() const {
  IntMatrix r = zeros<Integer>(dim(), torsion_rank());
  for (Eigen::Index i = 0; i < torsion_rank(); ++i) r(free_rank + i, i) = invariant_factors[static_cast<std::size_t>(i)];
  return r;
}

bool FGAbelianGroup::same_structure(const FGAbelianGroup& o) const {
  return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
}

std::string FGAbelianGroup::describe() const {
  if (is_trivial()) return "0";
  std::string s;
  if (free_rank > 0) s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
  for (const auto& d : invariant_factors) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.str();
  }
  return s;
}

FGAbelianGroup cokernel(const IntMatrix& M) {
  SmithForm s = smith_normal_form(M);
  const Eigen::Index m = M.rows();
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = s.rank; i < m; ++i) rows.push_back(i);
  FGAbelianGroup g;
  g.free_rank = m - s.rank;
  for (Eigen::Index i = 0; i < s.rank; ++i) {
    if (s.D(i, i) >= 2) {
      rows.push_back(i);
      g.invariant_factors.push_back(s.D(i, i));
    }
  }
  g.basis_change = IntMatrix(static_cast<Eigen::Index>(rows.size()), m);
  g.section = IntMatrix(m, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    g.basis_change.row(static_cast<Eigen::Index>(k)) = s.U.row(rows[k]);
    g.section.col(static_cast<Eigen::Index>(k)) = s.Uinv.col(rows[k]);
  }
  return g;
}

std::optional<IntVector> solve_integer(const IntMatrix& M, const IntVector& b) {
  if (b.size() != M.rows()) throw std::invalid_argument("solve_integer: dimension mismatch");
  SmithForm s = smith_normal_form(M);
  IntVector c = s.U * b;
  IntVector y = zeros<Integer>(M.cols());
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    if (i < s.rank) {
      if (c(i) % s.D(i, i) != 0) return std::nullopt;
      y(i) = c(i) / s.D(i, i);
    } else if (c(i) != 0) {
      return std::nullopt;
    }
  }
  return IntVector(s.V * y);
}

IntMatrix integer_kernel(const IntMatrix& M) {
  SmithForm s = smith_normal_form(M);
  return s.V.rightCols(M.cols() - s.rank);
}

IntMatrix lattice_basis(const IntMatrix& gens) {
  SmithForm s = smith_normal_form(gens);
  IntMatrix b(gens.rows(), s.rank);
  for (Eigen::Index i = 0; i < s.rank; ++i) b.col(i) = s.Uinv.col(i) * s.D(i, i);
  return b;
}

GroupQuotient quotient(const FGAbelianGroup& G, const std::vector<IntVector>& elements) {
  IntMatrix R = G.relations();
  IntMatrix rel(G.dim(), R.cols() + static_cast<Eigen::Index>(elements.size()));
  rel.leftCols(R.cols()) = R;
  for (std::size_t j = 0; j < elements.size(); ++j) rel.col(R.cols() + static_cast<Eigen::Index>(j)) = elements[j];
  GroupQuotient q;
  q.group = cokernel(rel);
  q.projection = q.group.basis_change;
  q.lift = q.group.section;
  return q;
}

IntMatrix relation_lattice(const FGAbelianGroup& G, const std::vector<IntVector>& elements) {
  const Eigen::Index s = static_cast<Eigen::Index>(elements.size());
  IntMatrix R = G.relations();
  IntMatrix A(G.dim(), s + R.cols());
  for (Eigen::Index j = 0; j < s; ++j) A.col(j) = elements[static_cast<std::size_t>(j)];
  A.rightCols(R.cols()) = R;
  IntMatrix K = integer_kernel(A);
  IntMatrix top = K.topRows(s);
  return lattice_basis(top);
}

FGAbelianGroup subgroup_structure(const FGAbelianGroup& G, const std::vector<IntVector>& elements) {
  IntMatrix K = relation_lattice(G, elements);
  if (K.rows() == 0) return FGAbelianGroup::free(0);
  return cokernel(K);
}

std::optional<IntVector> express_in_subgroup(const FGAbelianGroup& G, const std::vector<IntVector>& elements,
                                             const IntVector& target) {
  const Eigen::Index s = static_cast<Eigen::Index>(elements.size());
  IntMatrix R = G.relations();
  IntMatrix A(G.dim(), s + R.cols());
  for (Eigen::Index j = 0; j < s; ++j) A.col(j) = elements[static_cast<std::size_t>(j)];
  A.rightCols(R.cols()) = R;
  auto x = solve_integer(A, target);
  if (!x) return std::nullopt;
  return IntVector(x->head(s));
}

std::vector<IntVector> subgroup_torsion_generators(const FGAbelianGroup& G, const std::vector<IntVector>& elements) {
  if (elements.empty() || G.is_torsion_free()) return {};
  const Eigen::Index s = static_cast<Eigen::Index>(elements.size());
  IntMatrix E(G.dim(), s);
  for (Eigen::Index j = 0; j < s; ++j) E.col(j) = elements[static_cast<std::size_t>(j)];
  IntMatrix K = integer_kernel(E.topRows(G.free_rank));
  std::vector<IntVector> out;
  std::set<IntVector, LexLess> seen;
  for (Eigen::Index j = 0; j < K.cols(); ++j) {
    IntVector t = G.reduce(E * K.col(j));
    if (is_zero(t) || seen.count(t)) continue;
    seen.insert(t);
    out.push_back(t);
  }
  return out;
}

std::vector<IntVector> enumerate_finite_subgroup(const FGAbelianGroup& G, const std::vector<IntVector>& gens) {
  std::set<IntVector, LexLess> seen{G.zero()};
  std::vector<IntVector> frontier{G.zero()};
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        IntVector y = G.add(x, g);
        if (!is_zero(G.free_part(y))) throw std::invalid_argument("enumerate_finite_subgroup: non-torsion generator");
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

bool is_unimodular(const IntMatrix& M) {
  if (M.rows() != M.cols()) return false;
  return abs(determinant(M)) == 1;
}

}  // namespace lmon
