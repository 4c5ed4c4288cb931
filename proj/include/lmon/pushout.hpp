#pragma once

// Pushouts of monoid homomorphisms (raw, integral, saturated) and the
// constructions built on them: Kummer towers, Galois quotients, the
// U-monoid, finite-type witnesses and the N_P closure.

#include "lmon/hom.hpp"

#include <optional>
#include <vector>

namespace lmon {

struct PushoutResult {
  // (A_Q + A_P') / <(u g, -v g)>, where A_Q, A_P' are the ambient groups.
  // It contains Q^gp (+)_{P^gp} P'^gp as the subgroup generated by the images.
  FGAbelianGroup ambient;
  IntMatrix from_q, from_p;  // ambient coordinates of the two structure maps
  AffineMonoid int_monoid;   // generated by the images of the generators
  AffineMonoid sat_monoid;   // saturate(int_monoid); empty generators if not requested
  FGAbelianGroup envelope;   // abstract structure of int_monoid^gp
  bool saturated_computed = false;

  // class of (q, p') in the ambient
  IntVector class_of(const IntVector& q, const IntVector& p) const;
  bool torsion_free() const { return envelope.is_torsion_free(); }
  // w(q, p') = a q + B p' for a map out of the presentation, as ambient -> target
  IntMatrix descend(const IntMatrix& on_presentation) const;
};

// images of the generators of P under u (in Q) and v (in P')
PushoutResult pushout_of_images(const AffineMonoid& Q, const AffineMonoid& Pp, const std::vector<IntVector>& u_images,
                                const std::vector<IntVector>& v_images, bool with_saturation = true);
// u: P -> Q, v: P -> P' with a common source
FGAbelianGroup group_pushout(const MonoidHom& u, const MonoidHom& v);
PushoutResult int_pushout(const MonoidHom& u, const MonoidHom& v);
PushoutResult sat_pushout(const MonoidHom& u, const MonoidHom& v);

// v: N -> (1/n)N, stored in coordinates scaled by n
MonoidHom scaling_hom(const AffineMonoid& N, const Integer& n);
// pushout of u: N -> P along N -> (1/n)N
PushoutResult base_change(const MonoidHom& u, const Integer& n, bool with_saturation = true);

// Bounded rewriting for the raw (non-integral) pushout.
struct RawPushout {
  AffineMonoid Q, Pp;
  std::vector<IntVector> u_images, v_images;
};
enum class RawEquality { equal, distinct, unknown };
RawEquality raw_equal(const RawPushout& R, const IntVector& q1, const IntVector& p1, const IntVector& q2,
                      const IntVector& p2, int max_states);

struct KummerTower {
  Integer level = 1;
  PushoutResult pushout;     // P (+)^sat_N (1/n)N
  ScaledMonoid scaled_P;     // (1/n)P in n-scaled coordinates
  IntMatrix inclusion;       // pushout ambient -> n-scaled coordinates of P^gp
  bool injective = false;
  bool torsion_free = false;
  bool lands_in_scaled_P = false;
};
KummerTower kummer_tower(const PairNP& pair, const Integer& n);

// (P^gp / N^gp) (x) Z/n, with the projection from P^gp-basis coordinates
struct GaloisQuotient {
  Integer level = 1;
  FGAbelianGroup group;
  IntMatrix p_basis;  // columns: basis of P^gp in ambient coordinates
  IntVector character(const IntVector& p_gp_ambient) const;
};
GaloisQuotient galois_quotient(const PairNP& pair, const Integer& n);

// U = {(q, p) in Q (+) P : M q - u(p) in Q}
AffineMonoid u_monoid(const MonoidHom& u, const Integer& M);

struct FiniteTypeWitness {
  Integer level = 1;  // lcm(n, M)
  PushoutResult pushout;
  std::vector<IntVector> int_generators, u_images;  // the generating set of w
  bool verified = false;
  std::optional<IntVector> missing;  // a saturated generator not hit by w
};
FiniteTypeWitness finite_type_witness(const PairNP& pair, const Integer& M, const Integer& n);

struct NPClosure {
  AffineMonoid N_P;
  FGAbelianGroup G;            // N_P^gp / N^gp
  PushoutResult pushout;       // P (+)^sat_N N_P
  AffineMonoid product;        // P (+) G
  IntMatrix splitting;         // pushout ambient -> ambient of P (+) G
  bool verified = false;
};
NPClosure np_closure(const PairNP& pair);

}  // namespace lmon
