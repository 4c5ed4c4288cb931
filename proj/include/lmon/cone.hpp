#pragma once

// Rational polyhedral cones and polyhedra: dual descriptions, faces, tangent
// cones, strict feasibility, vertex enumeration.

#include "lmon/lp.hpp"
#include "lmon/scalar.hpp"

#include <optional>
#include <vector>

namespace lmon {

enum class RowKind { ge, gt, eq };

// normal . x  (>=, >, =)  offset
struct Halfspace {
  IntVector normal;
  Rational offset;
  RowKind kind = RowKind::ge;
};

struct RationalPolyhedron {
  Eigen::Index dim = 0;
  std::vector<Halfspace> rows;

  explicit RationalPolyhedron(Eigen::Index d = 0) : dim(d) {}
  RationalPolyhedron& ge(const IntVector& a, const Rational& b = 0);
  RationalPolyhedron& gt(const IntVector& a, const Rational& b = 0);
  RationalPolyhedron& eq(const IntVector& a, const Rational& b = 0);
  bool has_strict() const;
  bool satisfied_by(const QVector& x) const;
};

struct RationalCone {
  Eigen::Index ambient_dim = 0;
  std::vector<IntVector> generators;       // primitive, deduplicated
  std::vector<IntVector> facet_normals;    // <n,x> >= 0, primitive, n in span(C), sorted
  std::vector<IntVector> equations;        // cut out span(C); canonical basis
  std::vector<IntVector> lineality_basis;  // canonical basis of C ∩ -C
  std::vector<IntVector> rays;             // extreme rays of C ∩ (lineality)^perp

  Eigen::Index dim() const { return ambient_dim - static_cast<Eigen::Index>(equations.size()); }
  Eigen::Index lineality_dim() const { return static_cast<Eigen::Index>(lineality_basis.size()); }
  bool is_pointed() const { return lineality_basis.empty(); }
  bool is_full_dimensional() const { return equations.empty(); }
  bool is_zero() const { return dim() == 0; }
  bool contains(const QVector& x) const;
  bool contains(const IntVector& x) const { return contains(to_rational(x)); }
  bool in_span(const QVector& x) const;
  // tight facet indices of x (x assumed in C)
  std::vector<int> tight_set(const QVector& x) const;
  // V- and H-descriptions agree; normals tight on enough generators
  bool cross_validate() const;
  // all generators, including both signs of the lineality basis
  std::vector<IntVector> all_generators() const;
  // a functional strictly positive on C \ {0} (requires pointed)
  IntVector positive_functional() const;
  // canonical equality of H-descriptions
  bool same_set(const RationalCone& o) const;
  RationalPolyhedron as_polyhedron() const;
};

RationalCone dual_description(const std::vector<IntVector>& generators, Eigen::Index ambient_dim);
RationalCone dual_description(const std::vector<QVector>& generators, Eigen::Index ambient_dim);
// {x : <a,x> >= 0 for a in ineqs, <e,x> = 0 for e in eqs}
RationalCone cone_from_inequalities(const std::vector<IntVector>& ineqs, const std::vector<IntVector>& eqs,
                                    Eigen::Index ambient_dim);
RationalCone whole_space(Eigen::Index ambient_dim);
RationalCone intersect(const RationalCone& a, const RationalCone& b);
RationalCone preimage(const RationalCone& c, const IntMatrix& A);  // {x : A x in c}
RationalCone negate(const RationalCone& c);

struct Face {
  std::vector<int> tight_facets;  // sorted
  std::vector<int> rays;          // indices into cone.rays lying in the face
  Eigen::Index dim = 0;
  bool operator==(const Face& o) const { return tight_facets == o.tight_facets; }
};

// Faces ordered by dimension, then by tight set.
std::vector<Face> face_lattice(const RationalCone& C);
Face face_of_point(const RationalCone& C, const QVector& x);
bool is_face(const RationalCone& C, const Face& F);
bool face_contains(const RationalCone& C, const Face& F, const QVector& x);  // closed face
bool in_relative_interior(const RationalCone& C, const Face& F, const QVector& x);
RationalCone face_cone(const RationalCone& C, const Face& F);
// {v : <n_i, v> >= 0 for facets i tight on F}, inside span(C)
RationalCone tangent_cone(const RationalCone& C, const Face& F);
// constraints placing a point in the relative interior of F (offset-free)
void add_relint_constraints(RationalPolyhedron& P, const RationalCone& C, const Face& F, Eigen::Index offset);
void add_cone_constraints(RationalPolyhedron& P, const RationalCone& C, Eigen::Index offset);

// Homogenized standard form used by the strict feasibility routine:
// variables (x+, x-, lambda, slacks) >= 0, rows A z = b.
struct StrictStandardForm {
  QMatrix A;
  QVector b;
  Eigen::Index dim = 0;
};
StrictStandardForm strict_standard_form(const RationalPolyhedron& P);

struct StrictResult {
  std::optional<QVector> witness;
  QVector farkas;  // certificate of infeasibility for strict_standard_form(P)
};
StrictResult lp_feasible_strict_certified(const RationalPolyhedron& P);
std::optional<QVector> lp_feasible_strict(const RationalPolyhedron& P);

// optimize over the non-strict rows; variables free
LPResult lp_optimize(const RationalPolyhedron& P, const QVector& objective, bool maximize);

bool is_bounded(const RationalPolyhedron& P);
std::vector<QVector> polytope_vertices(const RationalPolyhedron& P);  // throws if unbounded

bool is_trivial_intersection(const RationalCone& C1, const RationalCone& C2);

}  // namespace lmon
