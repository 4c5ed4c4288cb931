#pragma once

// Affine monoids: finitely generated submonoids of a finitely generated
// abelian group.

#include "lmon/cone.hpp"
#include "lmon/lattice.hpp"

#include <map>
#include <optional>
#include <vector>

namespace lmon {

struct AffineMonoid {
  FGAbelianGroup ambient;
  std::vector<IntVector> generators;  // reduced, nonzero, sorted, duplicate-free

  // canonicalizes the generator list
  static AffineMonoid make(FGAbelianGroup ambient, const std::vector<IntVector>& gens);
  static AffineMonoid make(Eigen::Index rank, const std::vector<IntVector>& gens);
  static AffineMonoid orthant(Eigen::Index d);  // Z^d_{>=0}

  Eigen::Index dim() const { return ambient.dim(); }
  Eigen::Index size() const { return static_cast<Eigen::Index>(generators.size()); }
  std::vector<IntVector> free_parts() const;
  RationalCone cone() const;  // cone of the free parts
  IntVector combine(const IntVector& coefficients) const;  // sum c_i g_i, reduced
  bool same_generators(const AffineMonoid& o) const;
};

// Precomputed membership solver. Units are split off first; the sharp part
// is handled by a depth-first search over generator coefficients, bounded by
// a positive grading and pruned by the cones of the remaining generators.
class MemberSolver {
 public:
  explicit MemberSolver(const AffineMonoid& M);
  // nonnegative coefficients over M.generators, or nothing
  std::optional<IntVector> solve(const IntVector& a) const;
  bool contains(const IntVector& a) const { return solve(a).has_value(); }
  const std::vector<int>& unit_generators() const { return unit_idx_; }

 private:
  bool dfs(std::size_t i, const IntVector& rem, std::vector<Integer>& coef,
           std::map<IntVector, bool, LexLess>& failed) const;

  AffineMonoid M_;
  RationalCone cone_;
  std::vector<int> unit_idx_, nonunit_idx_;
  IntVector unit_relation_;  // positive coefficients on units summing to zero
  GroupQuotient sharp_;
  std::vector<IntVector> h_;  // images of non-units in the sharp quotient
  std::vector<RationalCone> suffix_;
  std::vector<bool> suffix_independent_;
  IntVector grading_;
};

std::optional<IntVector> member(const AffineMonoid& M, const IntVector& a);

// Hilbert basis of C ∩ Z^d, or of C ∩ B Z^r for a lattice with basis columns B.
std::vector<IntVector> hilbert_basis(const RationalCone& C);
std::vector<IntVector> hilbert_basis(const RationalCone& C, const IntMatrix& B);
// Monoid generators of C ∩ B Z^r for any cone (lineality allowed).
std::vector<IntVector> lattice_cone_generators(const IntMatrix& B, const RationalCone& C);

// {a in <group_gens> : free part of a in K}
AffineMonoid saturated_submonoid(const FGAbelianGroup& G, const std::vector<IntVector>& group_gens,
                                 const RationalCone& K);

// Exact for any ambient group: M^sat = {a in M^gp : free(a) in cone(M)}.
AffineMonoid saturate(const AffineMonoid& M);
// cone(M) ∩ ambient group: the normalization inside the ambient lattice
AffineMonoid saturate_in_ambient(const AffineMonoid& M);
AffineMonoid irredundant(const AffineMonoid& M);

FGAbelianGroup group_envelope(const AffineMonoid& M);
FGAbelianGroup units(const AffineMonoid& M);
struct Sharpened {
  AffineMonoid monoid;
  GroupQuotient quotient;  // ambient -> ambient / units
};
Sharpened sharpen(const AffineMonoid& M);

// (1/n)M, stored in coordinates multiplied by n.
struct ScaledMonoid {
  AffineMonoid monoid;
  Integer level = 1;
  IntMatrix inclusion;  // M -> (1/n)M, multiplication by n
  QVector to_rational(const IntVector& v) const;
};
ScaledMonoid scale(const AffineMonoid& M, const Integer& n);

AffineMonoid localize(const AffineMonoid& M, const std::vector<IntVector>& elements);

bool is_saturated(const AffineMonoid& M);
bool is_sharp(const AffineMonoid& M);
// every element e (default: generators) is k * m for some m in M, 2 <= k <= n
bool is_divisible_upto(const AffineMonoid& M, int n, const std::vector<IntVector>& elements = {});

}  // namespace lmon
