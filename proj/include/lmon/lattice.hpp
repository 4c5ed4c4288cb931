#pragma once

// Integer linear algebra: Smith normal form, finitely generated abelian
// groups, integer solvability.

#include "lmon/scalar.hpp"

#include <optional>
#include <vector>

namespace lmon {

struct SmithForm {
  IntMatrix U, D, V;   // U * M * V = D
  IntMatrix Uinv, Vinv;
  Eigen::Index rank = 0;
  std::vector<Integer> diagonal() const;  // the nonzero d_i, in order
};

// Minimal-absolute-value pivoting; ties go to the lowest row, then the
// lowest column.
SmithForm smith_normal_form(const IntMatrix& M);

// Z^free_rank (+) Z/d_1 (+) ... (+) Z/d_k with d_i | d_{i+1}, d_i >= 2.
// Elements are coordinate vectors of length free_rank + k, torsion
// coordinates reduced into [0, d_i).
struct FGAbelianGroup {
  Eigen::Index free_rank = 0;
  std::vector<Integer> invariant_factors;
  // Rows map presentation coordinates to normal-form coordinates (free rows
  // first). For a group built from scratch this is the identity.
  IntMatrix basis_change;
  // Columns lift the normal-form generators back to presentation coordinates.
  IntMatrix section;

  static FGAbelianGroup free(Eigen::Index rank);
  static FGAbelianGroup from_invariants(Eigen::Index free_rank, std::vector<Integer> torsion);

  Eigen::Index torsion_rank() const { return static_cast<Eigen::Index>(invariant_factors.size()); }
  Eigen::Index dim() const { return free_rank + torsion_rank(); }
  bool is_torsion_free() const { return invariant_factors.empty(); }
  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  Integer exponent() const;  // d_k, or 1
  Integer torsion_order() const;

  IntVector reduce(IntVector v) const;
  IntVector zero() const { return zeros<Integer>(dim()); }
  IntVector add(const IntVector& a, const IntVector& b) const { return reduce(a + b); }
  IntVector neg(const IntVector& a) const { return reduce(-a); }
  IntVector free_part(const IntVector& v) const { return v.head(free_rank); }
  IntVector torsion_part(const IntVector& v) const { return v.tail(torsion_rank()); }
  // normal-form coordinates of a presentation vector
  IntVector project(const IntVector& presentation) const { return reduce(basis_change * presentation); }
  // relation columns of the presentation Z^dim -> G (torsion relations)
  IntMatrix relations() const;
  bool same_structure(const FGAbelianGroup& o) const;
  std::string describe() const;  // e.g. "Z^2 + Z/2"
};

// coker(M : Z^cols -> Z^rows), with basis_change/section relative to Z^rows.
FGAbelianGroup cokernel(const IntMatrix& M);

// x with M x = b over the integers, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& M, const IntVector& b);

// Columns form a Z-basis of {x in Z^cols : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& M);

// Z-basis (columns) of the lattice spanned by the given columns.
IntMatrix lattice_basis(const IntMatrix& gens);

// Quotient G / <elements>, with the projection from G-coordinates.
struct GroupQuotient {
  FGAbelianGroup group;
  IntMatrix projection;  // group.reduce(projection * g) is the image of g
  IntMatrix lift;        // columns: G-coordinates of lifts of the quotient generators
  IntVector image(const IntVector& g) const { return group.reduce(projection * g); }
};
GroupQuotient quotient(const FGAbelianGroup& G, const std::vector<IntVector>& elements);

// Kernel of Z^s -> G, e_j -> elements[j]; columns form a Z-basis.
IntMatrix relation_lattice(const FGAbelianGroup& G, const std::vector<IntVector>& elements);

// Abstract structure of the subgroup generated by elements.
FGAbelianGroup subgroup_structure(const FGAbelianGroup& G, const std::vector<IntVector>& elements);

// Integer coefficients c with sum c_j elements[j] = target in G.
std::optional<IntVector> express_in_subgroup(const FGAbelianGroup& G, const std::vector<IntVector>& elements,
                                             const IntVector& target);

// Elements of the torsion subgroup of <elements> (finite), generators only.
std::vector<IntVector> subgroup_torsion_generators(const FGAbelianGroup& G, const std::vector<IntVector>& elements);

// Full list of the (finite) subgroup generated by torsion elements.
std::vector<IntVector> enumerate_finite_subgroup(const FGAbelianGroup& G, const std::vector<IntVector>& gens);

bool is_unimodular(const IntMatrix& M);

}  // namespace lmon
