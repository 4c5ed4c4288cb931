#pragma once

// Homomorphisms of affine monoids and their properties: exactness,
// integrality, quasi-saturatedness, pseudo-saturatedness, minimal
// decompositions and conductors.

#include "lmon/monoid.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lmon {

struct MonoidHom {
  AffineMonoid source, target;
  IntMatrix matrix;  // target.dim() x source.dim(), on ambient coordinates

  // checks well-definedness on torsion and that generators land in target
  static MonoidHom make(AffineMonoid source, AffineMonoid target, IntMatrix matrix);
  static MonoidHom unchecked(AffineMonoid source, AffineMonoid target, IntMatrix matrix);
  IntVector apply(const IntVector& a) const { return target.ambient.reduce(matrix * a); }
  std::vector<IntVector> generator_images() const;
  // block acting on free coordinates
  IntMatrix free_block() const { return matrix.topLeftCorner(target.ambient.free_rank, source.ambient.free_rank); }
};

MonoidHom identity_hom(const AffineMonoid& M);
bool is_injective(const MonoidHom& u);
FGAbelianGroup cokernel_of(const MonoidHom& u);  // target^gp / u(source^gp)

struct ExactnessResult {
  bool exact = false;
  std::optional<IntVector> counterexample;   // in (u^gp)^{-1}(Q) but not in P
  std::vector<IntVector> preimage_generators;
};
// requires source and target saturated
ExactnessResult is_exact(const MonoidHom& u);
// only the target needs to be saturated
ExactnessResult exactness_check(const MonoidHom& u);

struct IntegralityResult {
  bool integral = false;
  std::vector<IntVector> solution_generators;  // (a1, a2, b1, b2)
  std::optional<IntVector> failing_solution;
};
IntegralityResult is_integral(const MonoidHom& u);

struct PrimeCheck {
  int p = 0;
  bool passes = false;
  std::optional<IntVector> certificate;  // pushout element outside S, mapping into Q
};
PrimeCheck is_p_quasi_saturated(const MonoidHom& u, int p);

struct QuasiSaturationReport {
  std::vector<PrimeCheck> per_prime;
  bool heuristic_primes = false;  // default prime set was used
  bool all_pass() const;
  std::string describe() const;  // "quasi-saturated on {2,3}" / "fails at p=2"
};
QuasiSaturationReport is_quasi_saturated(const MonoidHom& u, const std::vector<int>& primes = {});
std::vector<int> default_primes(const MonoidHom& u);
std::vector<int> prime_factors(Integer n);

// A toric submonoid N of a torsion-free saturated monoid P.
struct PairNP {
  AffineMonoid P, N;  // same ambient Z^m
  RationalCone coneP, coneN;
  IntMatrix p_basis, n_basis;  // lattice bases of P^gp, N^gp
  QVector lambda;              // grading of N: sum of facet normals in N^gp coordinates

  static PairNP make(const AffineMonoid& P, const std::vector<IntVector>& n_generators);
  static PairNP from_hom(const MonoidHom& u);  // N = u(source) inside the target
  Eigen::Index dim() const { return P.ambient.free_rank; }
  bool degenerate() const { return N.generators.empty(); }
  MonoidHom inclusion() const;
};

struct MinimalDecomposition {
  QVector x, y_part, n_part;
  Face face;
};
struct DecompositionPiece {
  Face face;
  Eigen::Index dim = 0;
  std::vector<QVector> vertices;  // y-parts of the closed piece
};
struct Decompositions {
  std::vector<DecompositionPiece> pieces;
  std::vector<MinimalDecomposition> points;  // union of piece vertices
  bool unique() const;
};

bool is_minimal_face(const PairNP& pair, const Face& F);
std::vector<Face> minimal_faces(const PairNP& pair);
bool is_minimal_point(const PairNP& pair, const QVector& y);
Decompositions minimal_decompositions(const PairNP& pair, const QVector& x);

// g_N / f_N for pseudo-saturated pairs: the grading maximizer over
// {q in cone N : x - q in cone P}
QVector g_N(const PairNP& pair, const QVector& x);
QVector f_N(const PairNP& pair, const QVector& x);
Rational alpha_exponent(const PairNP& pair, const QVector& n_part);

struct ConductorBound {
  Integer determinant_bound = 1;  // max |det| over full-rank square subfamilies
  Integer lattice_index = 1;      // [Z^m ∩ span N : N^gp]
  Integer certified = 1;          // lcm of the nonzero |det| times lattice_index
  Integer refined = 1;            // lcm of g_N denominators over vertex systems
  bool meaningful = true;         // false when the pair is not pseudo-saturated
};
ConductorBound conductor_data(const PairNP& pair);
ConductorBound conductor_bound(const PairNP& pair);

struct FacePairRecord {
  int face1 = 0, face2 = 0;  // indices into the minimal face list
  bool feasible = false;
  std::vector<std::pair<int, int>> probes;  // (coordinate, sign), one per Farkas vector
  std::vector<QVector> farkas;
};
struct DecompositionWitness {
  QVector x;
  MinimalDecomposition first, second;
};
struct DecompositionCertificate {
  bool pseudo_saturated = false;
  bool degenerate = false;
  std::vector<Face> minimal_faces;
  std::vector<FacePairRecord> table;
  std::optional<DecompositionWitness> witness;
  ConductorBound conductor;
};
// y1 in relint F1, y2 in relint F2, q1, y1 + q1 - y2 in cone N and
// sign * (y1 - y2)_coord > 0; variables (y1, y2, q1)
RationalPolyhedron face_pair_system(const PairNP& pair, const Face& F1, const Face& F2, Eigen::Index coord,
                                    int sign);
DecompositionCertificate is_pseudo_saturated(const PairNP& pair);
bool verify_witness(const PairNP& pair, const DecompositionWitness& w);

struct ConductorTrial {
  Integer n;
  IntVector x, y;
  std::optional<IntVector> x_prime;
};
struct ConductorReport {
  Integer M;
  int trials = 0;
  std::vector<ConductorTrial> failures;
  bool all_passed() const { return failures.empty(); }
};
// one triple: u(x) | n y given; searches x' with M x | n x' and u(x') | M y
ConductorTrial conductor_trial(const MonoidHom& u, const Integer& M, const Integer& n, const IntVector& x,
                               const IntVector& y);
ConductorReport check_conductor_property(const MonoidHom& u, const Integer& M, int trials, std::uint64_t seed);
// guided search for a failing triple, with y ranging over multiples of `direction`
std::optional<ConductorTrial> find_conductor_failure(const MonoidHom& u, const Integer& M, const IntVector& direction,
                                                     int max_n, int max_multiple);

MonoidHom sharpen_hom(const MonoidHom& u);
MonoidHom localize_hom(const MonoidHom& u, const std::vector<IntVector>& source_elements,
                       const std::vector<IntVector>& target_elements);

struct ChartCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};
struct ChartReport {
  std::vector<ChartCheck> checks;
  bool valid() const;
};
ChartReport validate_small_chart(const MonoidHom& u, const std::vector<int>& primes = {});

}  // namespace lmon
