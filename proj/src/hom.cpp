#include "lmon/hom.hpp"

#include "lmon/linalg.hpp"
#include "lmon/pushout.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lmon {

namespace {

IntVector embed(const IntVector& a, Eigen::Index total, Eigen::Index offset) {
  IntVector v = zeros<Integer>(total);
  v.segment(offset, a.size()) = a;
  return v;
}

// all sums of generators with total height <= budget (generators of height 0 skipped)
std::vector<IntVector> bounded_elements(const std::vector<IntVector>& gens, const IntVector& height_functional,
                                        const Integer& budget, std::size_t cap = 50000) {
  const Eigen::Index d = gens.empty() ? height_functional.size() : gens[0].size();
  std::vector<std::pair<IntVector, Integer>> g;
  for (const auto& v : gens) {
    Integer h = dot(height_functional, v);
    if (h > 0) g.push_back({v, h});
  }
  std::set<IntVector, LexLess> out;
  std::function<void(std::size_t, const IntVector&, const Integer&)> rec = [&](std::size_t i, const IntVector& cur,
                                                                                const Integer& left) {
    if (out.size() >= cap) return;
    if (i == g.size()) {
      out.insert(cur);
      return;
    }
    IntVector c = cur;
    Integer l = left;
    while (l >= 0) {
      rec(i + 1, c, l);
      c += g[i].first;
      l -= g[i].second;
    }
  };
  rec(0, zeros<Integer>(d), budget);
  return {out.begin(), out.end()};
}

Integer free_height(const IntVector& w, const IntVector& v) { return dot(w, IntVector(v.head(w.size()))); }

}  // namespace

// ---------------------------------------------------------------- MonoidHom

MonoidHom MonoidHom::unchecked(AffineMonoid source, AffineMonoid target, IntMatrix matrix) {
  if (matrix.rows() != target.dim() || matrix.cols() != source.dim())
    throw std::invalid_argument("MonoidHom: matrix has wrong shape");
  MonoidHom u;
  u.source = std::move(source);
  u.target = std::move(target);
  u.matrix = std::move(matrix);
  return u;
}

MonoidHom MonoidHom::make(AffineMonoid source, AffineMonoid target, IntMatrix matrix) {
  MonoidHom u = unchecked(std::move(source), std::move(target), std::move(matrix));
  IntMatrix R = u.source.ambient.relations();
  for (Eigen::Index j = 0; j < R.cols(); ++j)
    if (!is_zero(u.apply(R.col(j)))) throw std::invalid_argument("MonoidHom: torsion relation not preserved");
  MemberSolver t(u.target);
  for (const auto& g : u.source.generators)
    if (!t.contains(u.apply(g))) throw std::invalid_argument("MonoidHom: generator image outside the target");
  return u;
}

std::vector<IntVector> MonoidHom::generator_images() const {
  std::vector<IntVector> out;
  for (const auto& g : source.generators) out.push_back(apply(g));
  return out;
}

MonoidHom identity_hom(const AffineMonoid& M) { return MonoidHom::unchecked(M, M, identity<Integer>(M.dim())); }

bool is_injective(const MonoidHom& u) {
  FGAbelianGroup a = subgroup_structure(u.source.ambient, u.source.generators);
  FGAbelianGroup b = subgroup_structure(u.target.ambient, u.generator_images());
  return a.same_structure(b);
}

FGAbelianGroup cokernel_of(const MonoidHom& u) {
  const auto& G = u.target.ambient;
  const auto& T = u.target.generators;
  const Eigen::Index k = static_cast<Eigen::Index>(T.size());
  IntMatrix R = relation_lattice(G, T);
  std::vector<IntVector> cols = columns_of(R);
  for (const auto& img : u.generator_images()) {
    auto c = express_in_subgroup(G, T, img);
    if (!c) throw std::logic_error("cokernel_of: image outside target group");
    cols.push_back(*c);
  }
  if (cols.empty()) return FGAbelianGroup::free(k);
  return cokernel(from_columns(cols, k));
}

// ---------------------------------------------------------------- exactness

ExactnessResult exactness_check(const MonoidHom& u) {
  RationalCone K = preimage(u.target.cone(), u.free_block());
  AffineMonoid X = saturated_submonoid(u.source.ambient, u.source.generators, K);
  ExactnessResult r;
  r.preimage_generators = X.generators;
  MemberSolver P(u.source);
  for (const auto& g : X.generators)
    if (!P.contains(g)) {
      r.counterexample = g;
      return r;
    }
  r.exact = true;
  return r;
}

ExactnessResult is_exact(const MonoidHom& u) {
  if (!is_saturated(u.source)) throw std::invalid_argument("is_exact: source is not saturated");
  if (!is_saturated(u.target)) throw std::invalid_argument("is_exact: target is not saturated");
  return exactness_check(u);
}

// ---------------------------------------------------------------- integrality

IntegralityResult is_integral(const MonoidHom& u) {
  const auto& P = u.source;
  const auto& Q = u.target;
  if (!P.ambient.is_torsion_free() || !Q.ambient.is_torsion_free())
    throw std::invalid_argument("is_integral: torsion ambients are not supported");
  if (!is_injective(u)) throw std::invalid_argument("is_integral: homomorphism is not injective");
  if (!is_saturated(P) || !is_saturated(Q)) throw std::invalid_argument("is_integral: inputs must be saturated");
  const Eigen::Index m = P.dim(), k = Q.dim();
  const IntMatrix& A = u.matrix;
  IntMatrix BP = lattice_basis(from_columns(P.generators, m));
  IntMatrix BQ = lattice_basis(from_columns(Q.generators, k));
  const Eigen::Index rp = BP.cols(), rq = BQ.cols();

  // solution lattice in (s1, s2, t1, t2) basis coordinates
  IntMatrix E(k, 2 * rp + 2 * rq);
  IntMatrix ABP = A * BP;
  E.leftCols(rp) = ABP;
  E.middleCols(rp, rp) = -ABP;
  E.middleCols(2 * rp, rq) = BQ;
  E.rightCols(rq) = -BQ;
  IntMatrix L = integer_kernel(E);
  const Eigen::Index D = 2 * m + 2 * k;
  IntMatrix emb = zeros<Integer>(D, 2 * rp + 2 * rq);
  emb.block(0, 0, m, rp) = BP;
  emb.block(m, rp, m, rp) = BP;
  emb.block(2 * m, 2 * rp, k, rq) = BQ;
  emb.block(2 * m + k, 2 * rp + rq, k, rq) = BQ;
  IntMatrix Bs = emb * L;

  RationalCone cP = P.cone(), cQ = Q.cone();
  std::vector<IntVector> ineqs, eqs;
  for (Eigen::Index off : {Eigen::Index(0), m}) {
    for (const auto& n : cP.facet_normals) ineqs.push_back(embed(n, D, off));
    for (const auto& e : cP.equations) eqs.push_back(embed(e, D, off));
  }
  for (Eigen::Index off : {2 * m, 2 * m + k}) {
    for (const auto& n : cQ.facet_normals) ineqs.push_back(embed(n, D, off));
    for (const auto& e : cQ.equations) eqs.push_back(embed(e, D, off));
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    IntVector row = zeros<Integer>(D);
    for (Eigen::Index j = 0; j < m; ++j) {
      row(j) = A(i, j);
      row(m + j) = -A(i, j);
    }
    row(2 * m + i) = 1;
    row(2 * m + k + i) = -1;
    eqs.push_back(row);
  }
  RationalCone C = cone_from_inequalities(ineqs, eqs, D);

  IntegralityResult r;
  r.solution_generators = Bs.cols() > 0 ? lattice_cone_generators(Bs, C) : std::vector<IntVector>{};

  // decomposability: (b1, b2, a2 - a1) lies in the monoid of (u p, 0, p), (0, u p, -p), (q, q, 0)
  const Eigen::Index T = 2 * k + m;
  std::vector<IntVector> tg;
  for (const auto& p : P.generators) {
    IntVector up = A * p;
    IntVector g1 = zeros<Integer>(T), g2 = zeros<Integer>(T);
    g1.head(k) = up;
    g1.tail(m) = p;
    g2.segment(k, k) = up;
    g2.tail(m) = -p;
    tg.push_back(g1);
    tg.push_back(g2);
  }
  for (const auto& q : Q.generators) {
    IntVector g = zeros<Integer>(T);
    g.head(k) = q;
    g.segment(k, k) = q;
    tg.push_back(g);
  }
  MemberSolver solver(AffineMonoid::make(T, tg));
  for (const auto& s : r.solution_generators) {
    IntVector t(T);
    t.head(k) = s.segment(2 * m, k);
    t.segment(k, k) = s.segment(2 * m + k, k);
    t.tail(m) = s.segment(m, m) - s.head(m);
    if (!solver.contains(t)) {
      r.failing_solution = s;
      return r;
    }
  }
  r.integral = true;
  return r;
}

// ---------------------------------------------------------------- quasi-saturation

PrimeCheck is_p_quasi_saturated(const MonoidHom& u, int p) {
  if (p < 2) throw std::invalid_argument("is_p_quasi_saturated: p must be prime");
  const auto& Q = u.target;
  const auto& P = u.source;
  std::vector<IntVector> vimg;
  for (const auto& g : P.generators) vimg.push_back(P.ambient.reduce(IntVector(Integer(p) * g)));
  PushoutResult S = pushout_of_images(Q, P, u.generator_images(), vimg, false);
  // w(q, r) = p q + u(r)
  IntMatrix W(Q.dim(), Q.dim() + P.dim());
  W.leftCols(Q.dim()) = identity<Integer>(Q.dim()) * Integer(p);
  W.rightCols(P.dim()) = u.matrix;
  MonoidHom w = MonoidHom::unchecked(S.int_monoid, Q, S.descend(W));
  ExactnessResult e = exactness_check(w);
  PrimeCheck c;
  c.p = p;
  c.passes = e.exact;
  c.certificate = e.counterexample;
  return c;
}

bool QuasiSaturationReport::all_pass() const {
  return std::all_of(per_prime.begin(), per_prime.end(), [](const PrimeCheck& c) { return c.passes; });
}

std::string QuasiSaturationReport::describe() const {
  std::ostringstream s;
  for (const auto& c : per_prime)
    if (!c.passes) {
      s << "fails at p=" << c.p;
      return s.str();
    }
  s << "quasi-saturated on {";
  for (std::size_t i = 0; i < per_prime.size(); ++i) s << (i ? "," : "") << per_prime[i].p;
  s << "}";
  if (heuristic_primes) s << " (default prime set)";
  return s.str();
}

std::vector<int> prime_factors(Integer n) {
  n = abs(n);
  std::vector<int> out;
  for (int p = 2; Integer(p) * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) {
    if (n > 1000000) throw std::invalid_argument("prime_factors: factor too large");
    out.push_back(static_cast<int>(n.convert_to<long>()));
  }
  return out;
}

std::vector<int> default_primes(const MonoidHom& u) {
  std::set<int> ps{2, 3, 5, 7};
  std::vector<Integer> inv = cokernel_of(u).invariant_factors;
  for (const auto& d : u.source.ambient.invariant_factors) inv.push_back(d);
  for (const auto& d : u.target.ambient.invariant_factors) inv.push_back(d);
  for (const auto& d : inv)
    for (int p : prime_factors(d)) ps.insert(p);
  return {ps.begin(), ps.end()};
}

QuasiSaturationReport is_quasi_saturated(const MonoidHom& u, const std::vector<int>& primes) {
  QuasiSaturationReport r;
  std::vector<int> ps = primes;
  if (ps.empty()) {
    ps = default_primes(u);
    r.heuristic_primes = true;
  }
  for (int p : ps) r.per_prime.push_back(is_p_quasi_saturated(u, p));
  return r;
}

// ---------------------------------------------------------------- pairs

PairNP PairNP::make(const AffineMonoid& P, const std::vector<IntVector>& n_generators) {
  if (!P.ambient.is_torsion_free()) throw std::invalid_argument("PairNP: P is not torsion-free");
  if (!is_saturated(P)) throw std::invalid_argument("PairNP: P is not saturated");
  const Eigen::Index m = P.dim();
  PairNP pr;
  pr.P = P;
  pr.N = AffineMonoid::make(m, n_generators);
  MemberSolver ps(P);
  for (const auto& g : pr.N.generators)
    if (!ps.contains(g)) throw std::invalid_argument("PairNP: N is not contained in P");
  if (!is_saturated(pr.N)) throw std::invalid_argument("PairNP: N is not saturated");
  pr.coneP = P.cone();
  pr.coneN = pr.N.cone();
  if (!pr.coneN.is_pointed()) throw std::invalid_argument("PairNP: N is not sharp");
  if (!is_trivial_intersection(pr.coneP, negate(pr.coneN)))
    throw std::invalid_argument("PairNP: P meets -N outside 0");
  pr.p_basis = lattice_basis(from_columns(P.generators, m));
  if (pr.degenerate()) {
    pr.n_basis = IntMatrix(m, 0);
    pr.lambda = zeros<Rational>(m);
    return pr;
  }
  pr.n_basis = lattice_basis(from_columns(pr.N.generators, m));
  RationalCone local = preimage(pr.coneN, pr.n_basis);
  IntVector ell = zeros<Integer>(pr.n_basis.cols());
  for (const auto& f : local.facet_normals) ell += f;
  auto lam = solve(QMatrix(to_rational(pr.n_basis).transpose()), to_rational(ell));
  if (!lam) throw std::logic_error("PairNP: grading does not extend");
  pr.lambda = *lam;
  return pr;
}

PairNP PairNP::from_hom(const MonoidHom& u) {
  if (!is_injective(u)) throw std::invalid_argument("PairNP: homomorphism is not injective");
  return make(u.target, u.generator_images());
}

MonoidHom PairNP::inclusion() const { return MonoidHom::unchecked(N, P, identity<Integer>(dim())); }

bool Decompositions::unique() const {
  if (points.size() != 1) return false;
  return std::all_of(pieces.begin(), pieces.end(), [](const DecompositionPiece& p) { return p.dim == 0; });
}

bool is_minimal_face(const PairNP& pair, const Face& F) {
  if (pair.degenerate()) return true;
  return is_trivial_intersection(tangent_cone(pair.coneP, F), negate(pair.coneN));
}

std::vector<Face> minimal_faces(const PairNP& pair) {
  std::vector<Face> out;
  for (const auto& F : face_lattice(pair.coneP))
    if (is_minimal_face(pair, F)) out.push_back(F);
  return out;
}

bool is_minimal_point(const PairNP& pair, const QVector& y) {
  if (!pair.coneP.contains(y)) return false;
  return is_minimal_face(pair, face_of_point(pair.coneP, y));
}

namespace {

// {y in relint F, x - y in cone N} (strict) or its closure
RationalPolyhedron piece_system(const PairNP& pair, const Face& F, const QVector& x, bool strict) {
  const Eigen::Index m = pair.dim();
  RationalPolyhedron S(m);
  if (strict) {
    add_relint_constraints(S, pair.coneP, F, 0);
  } else {
    for (const auto& e : pair.coneP.equations) S.eq(e);
    for (std::size_t i = 0; i < pair.coneP.facet_normals.size(); ++i) {
      const auto& n = pair.coneP.facet_normals[i];
      if (std::binary_search(F.tight_facets.begin(), F.tight_facets.end(), static_cast<int>(i))) S.eq(n);
      else S.ge(n);
    }
  }
  // n . (x - y) >= 0  <=>  -n . y >= -n . x
  for (const auto& e : pair.coneN.equations) S.eq(e, dot(e, x));
  for (const auto& n : pair.coneN.facet_normals) S.ge(IntVector(-n), Rational(-dot(n, x)));
  return S;
}

Eigen::Index affine_dim(const std::vector<QVector>& pts) {
  if (pts.size() < 2) return 0;
  QMatrix D(pts[0].size(), static_cast<Eigen::Index>(pts.size()) - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) D.col(static_cast<Eigen::Index>(i) - 1) = pts[i] - pts[0];
  return rank(D);
}

}  // namespace

Decompositions minimal_decompositions(const PairNP& pair, const QVector& x) {
  if (x.size() != pair.dim() || !pair.coneP.contains(x))
    throw std::invalid_argument("minimal_decompositions: point outside cone(P)");
  Decompositions out;
  if (pair.degenerate()) {
    MinimalDecomposition d{x, x, zeros<Rational>(pair.dim()), face_of_point(pair.coneP, x)};
    out.pieces.push_back({d.face, 0, {x}});
    out.points.push_back(d);
    return out;
  }
  std::vector<Face> mf = minimal_faces(pair);
  std::set<QVector, LexLess> seen;
  for (const auto& F : mf) {
    if (!lp_feasible_strict(piece_system(pair, F, x, true))) continue;
    DecompositionPiece piece;
    piece.face = F;
    piece.vertices = polytope_vertices(piece_system(pair, F, x, false));
    piece.dim = affine_dim(piece.vertices);
    for (const auto& y : piece.vertices) {
      Face G = face_of_point(pair.coneP, y);
      bool minimal = std::any_of(mf.begin(), mf.end(), [&](const Face& H) { return H == G; });
      if (!minimal || !seen.insert(y).second) continue;
      out.points.push_back({x, y, QVector(x - y), G});
    }
    out.pieces.push_back(piece);
  }
  if (out.points.empty()) throw std::logic_error("minimal_decompositions: no decomposition found");
  std::sort(out.points.begin(), out.points.end(),
            [](const MinimalDecomposition& a, const MinimalDecomposition& b) { return LexLess{}(a.y_part, b.y_part); });
  return out;
}

QVector g_N(const PairNP& pair, const QVector& x) {
  const Eigen::Index m = pair.dim();
  if (pair.degenerate()) return zeros<Rational>(m);
  if (!pair.coneP.contains(x)) throw std::invalid_argument("g_N: point outside cone(P)");
  RationalPolyhedron Y(m);
  add_cone_constraints(Y, pair.coneN, 0);
  for (const auto& e : pair.coneP.equations) Y.eq(e, dot(e, x));
  for (const auto& h : pair.coneP.facet_normals) Y.ge(IntVector(-h), Rational(-dot(h, x)));
  LPResult r = lp_optimize(Y, pair.lambda, true);
  if (r.status != LPStatus::optimal) throw std::logic_error("g_N: LP not optimal");
  return r.x;
}

QVector f_N(const PairNP& pair, const QVector& x) { return x - g_N(pair, x); }

Rational alpha_exponent(const PairNP& pair, const QVector& n_part) { return dot(pair.lambda, n_part); }

// ---------------------------------------------------------------- conductor

namespace {

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

ConductorBound conductor_data(const PairNP& pair) {
  ConductorBound b;
  if (pair.degenerate()) return b;
  const Eigen::Index m = pair.dim();
  // H: facets of cone P (rhs h.x), K: equations of span N, J: facets of cone N
  std::vector<IntVector> H = pair.coneP.facet_normals;
  std::vector<IntVector> K = pair.coneN.equations;
  std::vector<IntVector> J = pair.coneN.facet_normals;

  Integer det_lcm = 1;
  std::vector<IntVector> all = H;
  all.insert(all.end(), K.begin(), K.end());
  all.insert(all.end(), J.begin(), J.end());
  for_each_subset(static_cast<int>(all.size()), static_cast<int>(m), [&](const std::vector<int>& T) {
    IntMatrix M(m, m);
    for (Eigen::Index i = 0; i < m; ++i) M.row(i) = all[static_cast<std::size_t>(T[static_cast<std::size_t>(i)])].transpose();
    Integer d = abs(determinant(M));
    if (d > b.determinant_bound) b.determinant_bound = d;
    if (d != 0) det_lcm = lcm(det_lcm, d);
  });

  SmithForm s = smith_normal_form(from_columns(pair.N.generators, m));
  for (const auto& d : s.diagonal()) b.lattice_index *= d;
  // g_N(x) = T^{-1} S x for some T, so any common multiple of the |det T| works
  b.certified = det_lcm * b.lattice_index;

  // refined: N^gp coordinates of T^{-1} S x over x in P^gp
  QMatrix BN = to_rational(pair.n_basis);
  QMatrix coords = inverse(QMatrix(BN.transpose() * BN)) * BN.transpose();
  QMatrix BP = to_rational(pair.p_basis);
  std::vector<IntVector> HJ = H;
  HJ.insert(HJ.end(), J.begin(), J.end());
  const int free_rows = static_cast<int>(m) - static_cast<int>(K.size());
  Integer refined = 1;
  for_each_subset(static_cast<int>(HJ.size()), free_rows, [&](const std::vector<int>& T) {
    QMatrix A(m, m), S = zeros<Rational>(m, m);
    Eigen::Index r = 0;
    for (const auto& k : K) A.row(r++) = to_rational(k).transpose();
    for (int t : T) {
      const auto& row = HJ[static_cast<std::size_t>(t)];
      A.row(r) = to_rational(row).transpose();
      if (t < static_cast<int>(H.size())) S.row(r) = to_rational(row).transpose();
      ++r;
    }
    if (rank(A) != m) return;
    QMatrix L = coords * inverse(A) * S * BP;
    for (Eigen::Index i = 0; i < L.rows(); ++i)
      for (Eigen::Index j = 0; j < L.cols(); ++j) refined = lcm(refined, denominator(L(i, j)));
  });
  b.refined = refined;
  return b;
}

ConductorBound conductor_bound(const PairNP& pair) { return is_pseudo_saturated(pair).conductor; }

// ---------------------------------------------------------------- pseudo-saturation

RationalPolyhedron face_pair_system(const PairNP& pair, const Face& F1, const Face& F2, Eigen::Index coord,
                                    int sign) {
  const Eigen::Index m = pair.dim();
  RationalPolyhedron S(3 * m);
  add_relint_constraints(S, pair.coneP, F1, 0);
  add_relint_constraints(S, pair.coneP, F2, m);
  add_cone_constraints(S, pair.coneN, 2 * m);
  auto shifted = [&](const IntVector& n) {
    IntVector r = zeros<Integer>(3 * m);
    r.segment(0, m) = n;
    r.segment(m, m) = -n;
    r.segment(2 * m, m) = n;
    return r;
  };
  for (const auto& e : pair.coneN.equations) S.eq(shifted(e));
  for (const auto& n : pair.coneN.facet_normals) S.ge(shifted(n));
  IntVector d = zeros<Integer>(3 * m);
  d(coord) = sign;
  d(m + coord) = -sign;
  S.gt(d);
  return S;
}

bool verify_witness(const PairNP& pair, const DecompositionWitness& w) {
  for (const auto* d : {&w.first, &w.second}) {
    if (!vec_equal(QVector(d->y_part + d->n_part), w.x)) return false;
    if (!pair.coneN.contains(d->n_part)) return false;
    if (!is_minimal_point(pair, d->y_part)) return false;
  }
  return !vec_equal(w.first.y_part, w.second.y_part);
}

namespace {

std::optional<DecompositionWitness> witness_at(const PairNP& pair, const QVector& x) {
  Decompositions d = minimal_decompositions(pair, x);
  if (d.points.size() >= 2) return DecompositionWitness{x, d.points[0], d.points[1]};
  for (const auto& piece : d.pieces)
    if (piece.dim > 0 && piece.vertices.size() >= 2) {
      const QVector& a = piece.vertices[0];
      const QVector& b = piece.vertices[1];
      QVector mid = (a + b) / Rational(2);
      MinimalDecomposition p1{x, a, QVector(x - a), face_of_point(pair.coneP, a)};
      MinimalDecomposition p2{x, mid, QVector(x - mid), face_of_point(pair.coneP, mid)};
      DecompositionWitness w{x, p1, p2};
      if (verify_witness(pair, w)) return w;
    }
  return std::nullopt;
}

// lattice points of P in order of (degree, lex) up to the degree of `limit`
std::optional<DecompositionWitness> search_integer_witness(const PairNP& pair, const IntVector& limit) {
  IntVector w = zeros<Integer>(pair.dim());
  for (const auto& f : pair.coneP.facet_normals) w += f;
  if (is_zero(w)) return std::nullopt;
  Integer top = dot(w, limit);
  auto pts = bounded_elements(pair.P.generators, w, top, 4000);
  std::sort(pts.begin(), pts.end(), [&](const IntVector& a, const IntVector& b) {
    Integer da = dot(w, a), db = dot(w, b);
    if (da != db) return da < db;
    return LexLess{}(a, b);
  });
  int budget = 400;
  for (const auto& p : pts) {
    if (is_zero(p)) continue;
    if (--budget < 0) break;
    if (auto wt = witness_at(pair, to_rational(p))) return wt;
  }
  return std::nullopt;
}

}  // namespace

DecompositionCertificate is_pseudo_saturated(const PairNP& pair) {
  DecompositionCertificate c;
  c.conductor = conductor_data(pair);
  if (pair.degenerate()) {
    c.pseudo_saturated = true;
    c.degenerate = true;
    return c;
  }
  c.minimal_faces = minimal_faces(pair);
  const Eigen::Index m = pair.dim();
  const int nf = static_cast<int>(c.minimal_faces.size());
  std::optional<QVector> lp_witness;
  for (int a = 0; a < nf && !lp_witness; ++a)
    for (int b = a; b < nf && !lp_witness; ++b) {
      FacePairRecord rec;
      rec.face1 = a;
      rec.face2 = b;
      for (Eigen::Index i = 0; i < m && !rec.feasible; ++i)
        for (int s : {1, -1}) {
          if (a == b && s < 0) continue;  // symmetric in (y1, y2)
          StrictResult r = lp_feasible_strict_certified(face_pair_system(
              pair, c.minimal_faces[static_cast<std::size_t>(a)], c.minimal_faces[static_cast<std::size_t>(b)], i, s));
          if (r.witness) {
            rec.feasible = true;
            QVector z = *r.witness;
            lp_witness = QVector(z.head(m) + z.tail(m));
            break;
          }
          rec.probes.push_back({static_cast<int>(i), s});
          rec.farkas.push_back(r.farkas);
        }
      c.table.push_back(rec);
    }
  if (!lp_witness) {
    c.pseudo_saturated = true;
    return c;
  }
  c.conductor.meaningful = false;
  IntVector x0 = primitive(*lp_witness);
  c.witness = search_integer_witness(pair, x0);
  if (!c.witness) c.witness = witness_at(pair, to_rational(x0));
  if (!c.witness) c.witness = witness_at(pair, *lp_witness);
  if (!c.witness || !verify_witness(pair, *c.witness))
    throw std::logic_error("is_pseudo_saturated: could not extract a verified witness");
  return c;
}

// ---------------------------------------------------------------- conductor property

ConductorTrial conductor_trial(const MonoidHom& u, const Integer& M, const Integer& n, const IntVector& x,
                               const IntVector& y) {
  ConductorTrial t{n, x, y, std::nullopt};
  MemberSolver Ps(u.target), Ns(u.source);
  IntVector w = u.target.cone().positive_functional();
  IntVector My = Integer(M) * y;
  std::vector<IntVector> img;
  for (const auto& g : u.source.generators) img.push_back(u.apply(g));
  // heights of source generators measured through u
  std::vector<IntVector> gens = u.source.generators;
  std::vector<Integer> h;
  for (const auto& g : img) h.push_back(free_height(w, g));
  Integer budget = free_height(w, My);
  IntVector Mx = Integer(M) * x;
  std::function<bool(std::size_t, const IntVector&, const Integer&)> rec = [&](std::size_t i, const IntVector& cur,
                                                                                const Integer& left) -> bool {
    if (i == gens.size()) {
      if (!Ns.contains(u.source.ambient.reduce(IntVector(n * cur - Mx)))) return false;
      if (!Ps.contains(u.target.ambient.reduce(IntVector(My - u.matrix * cur)))) return false;
      t.x_prime = cur;
      return true;
    }
    if (h[i] <= 0) return rec(i + 1, cur, left);
    IntVector c = cur;
    Integer l = left;
    while (l >= 0) {
      if (rec(i + 1, c, l)) return true;
      c += gens[i];
      l -= h[i];
    }
    return false;
  };
  rec(0, zeros<Integer>(u.source.dim()), budget);
  return t;
}

ConductorReport check_conductor_property(const MonoidHom& u, const Integer& M, int trials, std::uint64_t seed) {
  if (M < 1) throw std::invalid_argument("check_conductor_property: M must be positive");
  ConductorReport rep;
  rep.M = M;
  std::mt19937_64 rng(seed);
  MemberSolver Ps(u.target);
  const auto& PG = u.target.generators;
  const auto& NG = u.source.generators;
  for (int k = 0; k < trials; ++k) {
    Integer n = static_cast<long>(rng() % 4 + 1);
    IntVector y = zeros<Integer>(u.target.dim());
    for (const auto& g : PG) y += Integer(static_cast<long>(rng() % 3)) * g;
    y = u.target.ambient.reduce(y);
    IntVector x = zeros<Integer>(u.source.dim());
    for (int attempt = 0; attempt < 30; ++attempt) {
      IntVector cand = zeros<Integer>(u.source.dim());
      long range = std::max<long>(1, 4 - attempt / 6);
      for (const auto& g : NG) cand += Integer(static_cast<long>(rng() % static_cast<std::uint64_t>(range + 1))) * g;
      cand = u.source.ambient.reduce(cand);
      if (Ps.contains(u.target.ambient.reduce(IntVector(n * y - u.matrix * cand)))) {
        x = cand;
        break;
      }
    }
    ConductorTrial t = conductor_trial(u, M, n, x, y);
    ++rep.trials;
    if (!t.x_prime) rep.failures.push_back(t);
  }
  return rep;
}

std::optional<ConductorTrial> find_conductor_failure(const MonoidHom& u, const Integer& M, const IntVector& direction,
                                                     int max_n, int max_multiple) {
  MemberSolver Ps(u.target);
  IntVector w = u.target.cone().positive_functional();
  std::vector<Integer> h;
  for (const auto& g : u.source.generators) h.push_back(free_height(w, u.apply(g)));
  for (int k = 1; k <= max_multiple; ++k) {
    IntVector y = Integer(k) * direction;
    for (int n = 1; n <= max_n; ++n) {
      // elements x of the source with u(x) | n y
      Integer budget = free_height(w, IntVector(Integer(n) * y));
      std::set<IntVector, LexLess> xs;
      std::function<void(std::size_t, const IntVector&, const Integer&)> rec = [&](std::size_t i, const IntVector& cur,
                                                                                    const Integer& left) {
        if (xs.size() > 5000) return;
        if (i == h.size()) {
          xs.insert(u.source.ambient.reduce(cur));
          return;
        }
        if (h[i] <= 0) return rec(i + 1, cur, left);
        IntVector c = cur;
        Integer l = left;
        while (l >= 0) {
          rec(i + 1, c, l);
          c += u.source.generators[i];
          l -= h[i];
        }
      };
      rec(0, zeros<Integer>(u.source.dim()), budget);
      for (const auto& x : xs) {
        if (!Ps.contains(u.target.ambient.reduce(IntVector(Integer(n) * y - u.matrix * x)))) continue;
        ConductorTrial t = conductor_trial(u, M, Integer(n), x, y);
        if (!t.x_prime) return t;
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- reductions

MonoidHom sharpen_hom(const MonoidHom& u) {
  Sharpened s = sharpen(u.source), t = sharpen(u.target);
  IntMatrix A = t.quotient.projection * u.matrix * s.quotient.lift;
  IntMatrix R(A.rows(), A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j) R.col(j) = t.monoid.ambient.reduce(A.col(j));
  return MonoidHom::make(s.monoid, t.monoid, R);
}

MonoidHom localize_hom(const MonoidHom& u, const std::vector<IntVector>& source_elements,
                       const std::vector<IntVector>& target_elements) {
  AffineMonoid S = localize(u.source, source_elements);
  std::vector<IntVector> t = target_elements;
  for (const auto& s : source_elements) t.push_back(u.apply(s));
  AffineMonoid T = localize(u.target, t);
  return MonoidHom::make(S, T, u.matrix);
}

bool ChartReport::valid() const {
  return std::all_of(checks.begin(), checks.end(), [](const ChartCheck& c) { return c.passed; });
}

ChartReport validate_small_chart(const MonoidHom& u, const std::vector<int>& primes) {
  ChartReport r;
  bool inj = is_injective(u);
  r.checks.push_back({"injective", inj, inj ? "" : "u^gp has a kernel"});
  FGAbelianGroup Pg = group_envelope(u.target);
  bool tf = Pg.is_torsion_free() && u.target.ambient.is_torsion_free();
  r.checks.push_back({"P torsion-free", tf, Pg.describe()});
  bool sharp_ok = false;
  if (tf) {
    RationalCone n = dual_description(u.generator_images(), u.target.ambient.free_rank);
    sharp_ok = is_trivial_intersection(u.target.cone(), negate(n));
  }
  r.checks.push_back({"P cap -N = 0", sharp_ok, ""});
  bool integ = false;
  std::string idetail;
  if (inj && tf) {
    IntegralityResult ir = is_integral(u);
    integ = ir.integral;
    if (ir.failing_solution) idetail = "failing solution " + to_string(*ir.failing_solution);
  }
  r.checks.push_back({"integral", integ, idetail});
  QuasiSaturationReport q = is_quasi_saturated(u, primes);
  r.checks.push_back({"quasi-saturated", q.all_pass(), q.describe()});
  FGAbelianGroup ck = cokernel_of(u);
  r.checks.push_back({"coker torsion-free", ck.is_torsion_free(), ck.describe()});
  bool ps = false;
  if (inj && tf && sharp_ok && is_saturated(u.target)) {
    try {
      ps = is_pseudo_saturated(PairNP::from_hom(u)).pseudo_saturated;
    } catch (const std::invalid_argument&) {
      ps = false;
    }
  }
  r.checks.push_back({"pseudo-saturated", ps, ""});
  return r;
}

}  // namespace lmon
