#include "lmon/pushout.hpp"

#include "lmon/linalg.hpp"

#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace lmon {

IntVector PushoutResult::class_of(const IntVector& q, const IntVector& p) const {
  return ambient.reduce(IntVector(from_q * q + from_p * p));
}

IntMatrix PushoutResult::descend(const IntMatrix& on_presentation) const { return on_presentation * ambient.section; }

PushoutResult pushout_of_images(const AffineMonoid& Q, const AffineMonoid& Pp, const std::vector<IntVector>& u_images,
                                const std::vector<IntVector>& v_images, bool with_saturation) {
  if (u_images.size() != v_images.size()) throw std::invalid_argument("pushout: image lists differ in length");
  const Eigen::Index dq = Q.dim(), dp = Pp.dim();
  std::vector<IntVector> rels;
  IntMatrix RQ = Q.ambient.relations(), RP = Pp.ambient.relations();
  for (Eigen::Index j = 0; j < RQ.cols(); ++j) rels.push_back(concat(IntVector(RQ.col(j)), zeros<Integer>(dp)));
  for (Eigen::Index j = 0; j < RP.cols(); ++j) rels.push_back(concat(zeros<Integer>(dq), IntVector(RP.col(j))));
  for (std::size_t i = 0; i < u_images.size(); ++i) rels.push_back(concat(u_images[i], IntVector(-v_images[i])));
  if (rels.empty()) rels.push_back(zeros<Integer>(dq + dp));

  PushoutResult r;
  r.ambient = cokernel(from_columns(rels, dq + dp));
  r.from_q = r.ambient.basis_change.leftCols(dq);
  r.from_p = r.ambient.basis_change.rightCols(dp);
  std::vector<IntVector> gens;
  for (const auto& q : Q.generators) gens.push_back(r.ambient.reduce(IntVector(r.from_q * q)));
  for (const auto& p : Pp.generators) gens.push_back(r.ambient.reduce(IntVector(r.from_p * p)));
  r.int_monoid = AffineMonoid::make(r.ambient, gens);
  r.envelope = group_envelope(r.int_monoid);
  if (with_saturation) {
    r.sat_monoid = saturate(r.int_monoid);
    r.saturated_computed = true;
  } else {
    r.sat_monoid = AffineMonoid::make(r.ambient, {});
  }
  return r;
}

namespace {
void require_common_source(const MonoidHom& u, const MonoidHom& v) {
  if (!u.source.same_generators(v.source) || !u.source.ambient.same_structure(v.source.ambient))
    throw std::invalid_argument("pushout: maps have different sources");
}
}  // namespace

FGAbelianGroup group_pushout(const MonoidHom& u, const MonoidHom& v) {
  require_common_source(u, v);
  return pushout_of_images(u.target, v.target, u.generator_images(), v.generator_images(), false).envelope;
}

PushoutResult int_pushout(const MonoidHom& u, const MonoidHom& v) {
  require_common_source(u, v);
  return pushout_of_images(u.target, v.target, u.generator_images(), v.generator_images(), false);
}

PushoutResult sat_pushout(const MonoidHom& u, const MonoidHom& v) {
  require_common_source(u, v);
  return pushout_of_images(u.target, v.target, u.generator_images(), v.generator_images(), true);
}

MonoidHom scaling_hom(const AffineMonoid& N, const Integer& n) {
  ScaledMonoid s = scale(N, n);
  return MonoidHom::unchecked(N, s.monoid, s.inclusion);
}

PushoutResult base_change(const MonoidHom& u, const Integer& n, bool with_saturation) {
  if (n < 1) throw std::invalid_argument("base_change: level must be positive");
  std::vector<IntVector> v;
  for (const auto& g : u.source.generators) v.push_back(IntVector(n * g));
  return pushout_of_images(u.target, u.source, u.generator_images(), v, with_saturation);
}

// ---------------------------------------------------------------- raw pushout

RawEquality raw_equal(const RawPushout& R, const IntVector& q1, const IntVector& p1, const IntVector& q2,
                      const IntVector& p2, int max_states) {
  MemberSolver Qs(R.Q), Ps(R.Pp);
  const Eigen::Index dq = R.Q.dim();
  auto key = [&](const IntVector& q, const IntVector& p) {
    return concat(R.Q.ambient.reduce(q), R.Pp.ambient.reduce(p));
  };
  IntVector goal = key(q2, p2);
  std::set<IntVector, LexLess> seen{key(q1, p1)};
  std::deque<IntVector> queue{key(q1, p1)};
  while (!queue.empty()) {
    IntVector s = queue.front();
    queue.pop_front();
    if (vec_equal(s, goal)) return RawEquality::equal;
    IntVector q = s.head(dq), p = s.tail(s.size() - dq);
    for (std::size_t i = 0; i < R.u_images.size(); ++i) {
      // (q, p) = (q' + u g, p) ~ (q', p + v g) and back
      IntVector qm = R.Q.ambient.reduce(IntVector(q - R.u_images[i]));
      if (Qs.contains(qm)) {
        IntVector t = key(qm, IntVector(p + R.v_images[i]));
        if (seen.insert(t).second) queue.push_back(t);
      }
      IntVector pm = R.Pp.ambient.reduce(IntVector(p - R.v_images[i]));
      if (Ps.contains(pm)) {
        IntVector t = key(IntVector(q + R.u_images[i]), pm);
        if (seen.insert(t).second) queue.push_back(t);
      }
    }
    if (static_cast<int>(seen.size()) > max_states) return RawEquality::unknown;
  }
  return RawEquality::distinct;
}

// ---------------------------------------------------------------- Kummer towers

KummerTower kummer_tower(const PairNP& pair, const Integer& n) {
  MonoidHom u = pair.inclusion();
  if (!cokernel_of(u).is_torsion_free()) throw std::invalid_argument("kummer_tower: coker(u^gp) has torsion");
  const Eigen::Index m = pair.dim();
  KummerTower t;
  t.level = n;
  t.pushout = base_change(u, n, true);
  t.scaled_P = scale(pair.P, n);
  // (p, r) -> n p + r
  IntMatrix W(m, 2 * m);
  W.leftCols(m) = identity<Integer>(m) * n;
  W.rightCols(m) = identity<Integer>(m);
  t.inclusion = t.pushout.descend(W);
  t.torsion_free = t.pushout.torsion_free();
  std::vector<IntVector> img;
  for (const auto& g : t.pushout.sat_monoid.generators) img.push_back(t.inclusion * g);
  Eigen::Index r = img.empty() ? 0 : rank(from_columns(img, m));
  t.injective = t.torsion_free && r == t.pushout.envelope.free_rank;
  MemberSolver Ps(pair.P);
  t.lands_in_scaled_P = true;
  for (const auto& v : img)
    if (!Ps.contains(v)) t.lands_in_scaled_P = false;
  return t;
}

IntVector GaloisQuotient::character(const IntVector& v) const {
  auto c = solve_integer(p_basis, v);
  if (!c) throw std::invalid_argument("character: element outside P^gp");
  return group.project(*c);
}

GaloisQuotient galois_quotient(const PairNP& pair, const Integer& n) {
  if (n < 1) throw std::invalid_argument("galois_quotient: level must be positive");
  GaloisQuotient g;
  g.level = n;
  g.p_basis = pair.p_basis;
  const Eigen::Index r = g.p_basis.cols();
  std::vector<IntVector> cols;
  for (const auto& x : pair.N.generators) {
    auto c = solve_integer(g.p_basis, x);
    if (!c) throw std::logic_error("galois_quotient: N outside P^gp");
    cols.push_back(*c);
  }
  for (Eigen::Index i = 0; i < r; ++i) cols.push_back(IntVector(n * unit<Integer>(r, i)));
  g.group = cokernel(from_columns(cols, r));
  return g;
}

// ---------------------------------------------------------------- U-monoid

AffineMonoid u_monoid(const MonoidHom& u, const Integer& M) {
  if (M < 1) throw std::invalid_argument("u_monoid: M must be positive");
  if (!u.source.ambient.is_torsion_free() || !u.target.ambient.is_torsion_free())
    throw std::invalid_argument("u_monoid: torsion ambients are not supported");
  const Eigen::Index kq = u.target.dim(), kp = u.source.dim(), d = kq + kp;
  RationalCone cQ = u.target.cone(), cP = u.source.cone();
  IntMatrix At = u.matrix.transpose();
  std::vector<IntVector> ineqs, eqs;
  auto add = [&](std::vector<IntVector>& out, const IntVector& a, const IntVector& b) { out.push_back(concat(a, b)); };
  for (const auto& n : cQ.facet_normals) {
    add(ineqs, n, zeros<Integer>(kp));
    add(ineqs, IntVector(M * n), IntVector(-(At * n)));
  }
  for (const auto& e : cQ.equations) {
    add(eqs, e, zeros<Integer>(kp));
    add(eqs, IntVector(M * e), IntVector(-(At * e)));
  }
  for (const auto& n : cP.facet_normals) add(ineqs, zeros<Integer>(kq), n);
  for (const auto& e : cP.equations) add(eqs, zeros<Integer>(kq), e);
  RationalCone K = cone_from_inequalities(ineqs, eqs, d);
  std::vector<IntVector> gens;
  for (const auto& q : u.target.generators) gens.push_back(concat(q, zeros<Integer>(kp)));
  for (const auto& p : u.source.generators) gens.push_back(concat(zeros<Integer>(kq), p));
  return saturated_submonoid(FGAbelianGroup::free(d), gens, K);
}

FiniteTypeWitness finite_type_witness(const PairNP& pair, const Integer& M, const Integer& n) {
  if (M < 1 || n < 1) throw std::invalid_argument("finite_type_witness: M and n must be positive");
  MonoidHom u = pair.inclusion();
  const Eigen::Index m = pair.dim();
  FiniteTypeWitness w;
  w.level = lcm(n, M);
  w.pushout = base_change(u, w.level, true);
  w.int_generators = w.pushout.int_monoid.generators;
  AffineMonoid U = u_monoid(u, M);
  const Integer k = w.level / M;
  // (p, x) -> (p, -(1/M) x) with (1/L)N stored scaled by L
  for (const auto& g : U.generators) w.u_images.push_back(w.pushout.class_of(g.head(m), IntVector(-k * g.tail(m))));
  std::vector<IntVector> all = w.int_generators;
  all.insert(all.end(), w.u_images.begin(), w.u_images.end());
  MemberSolver image(AffineMonoid::make(w.pushout.ambient, all));
  MemberSolver sat(w.pushout.sat_monoid);
  for (const auto& v : w.u_images)
    if (!sat.contains(v)) {
      w.missing = v;
      return w;
    }
  for (const auto& g : w.pushout.sat_monoid.generators)
    if (!image.contains(g)) {
      w.missing = g;
      return w;
    }
  w.verified = true;
  return w;
}

// ---------------------------------------------------------------- N_P closure

NPClosure np_closure(const PairNP& pair) {
  const Eigen::Index m = pair.dim();
  NPClosure c;
  c.N_P = saturated_submonoid(pair.P.ambient, pair.P.generators, pair.coneN);
  if (pair.degenerate()) {
    c.G = FGAbelianGroup::free(0);
    c.product = pair.P;
    c.pushout = pushout_of_images(pair.P, AffineMonoid::make(0, {}), {}, {}, true);
    c.splitting = c.pushout.descend(identity<Integer>(m));
    c.verified = true;
    return c;
  }
  IntMatrix B = lattice_basis(from_columns(c.N_P.generators, m));
  const Eigen::Index r = B.cols();
  auto coords = [&](const IntVector& v) {
    auto s = solve_integer(B, v);
    if (!s) throw std::logic_error("np_closure: element outside N_P^gp");
    return *s;
  };
  std::vector<IntVector> ncols, npg;
  for (const auto& g : pair.N.generators) ncols.push_back(coords(g));
  for (const auto& g : c.N_P.generators) npg.push_back(coords(g));
  c.G = cokernel(from_columns(ncols, r));
  if (c.G.free_rank != 0) throw std::logic_error("np_closure: N_P^gp / N^gp is infinite");
  c.pushout = pushout_of_images(pair.P, AffineMonoid::make(r, npg), pair.N.generators, ncols, true);

  FGAbelianGroup T = FGAbelianGroup::from_invariants(m, c.G.invariant_factors);
  const Eigen::Index t = c.G.torsion_rank();
  std::vector<IntVector> pg;
  for (const auto& p : pair.P.generators) pg.push_back(concat(p, zeros<Integer>(t)));
  for (Eigen::Index i = 0; i < t; ++i) pg.push_back(unit<Integer>(m + t, m + i));
  c.product = AffineMonoid::make(T, pg);

  // (p, c) -> (p + B c, [c])
  IntMatrix psi = zeros<Integer>(m + t, m + r);
  psi.topLeftCorner(m, m) = identity<Integer>(m);
  psi.topRightCorner(m, r) = B;
  psi.bottomRightCorner(t, r) = c.G.basis_change;
  c.splitting = c.pushout.descend(psi);

  std::vector<IntVector> img;
  for (const auto& g : c.pushout.sat_monoid.generators) img.push_back(T.reduce(IntVector(c.splitting * g)));
  MemberSolver prod(c.product), image(AffineMonoid::make(T, img));
  bool ok = subgroup_structure(T, img).same_structure(group_envelope(c.pushout.sat_monoid));
  for (const auto& v : img) ok = ok && prod.contains(v);
  for (const auto& g : c.product.generators) ok = ok && image.contains(g);
  c.verified = ok;
  return c;
}

}  // namespace lmon
