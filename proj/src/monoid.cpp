#include "lmon/monoid.hpp"

#include "lmon/linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lmon {

AffineMonoid AffineMonoid::make(FGAbelianGroup ambient, const std::vector<IntVector>& gens) {
  std::set<IntVector, LexLess> s;
  for (const auto& g : gens) {
    if (g.size() != ambient.dim()) throw std::invalid_argument("monoid generator has wrong length");
    IntVector r = ambient.reduce(g);
    if (!is_zero(r)) s.insert(r);
  }
  AffineMonoid M;
  M.ambient = std::move(ambient);
  M.generators.assign(s.begin(), s.end());
  return M;
}

AffineMonoid AffineMonoid::make(Eigen::Index rank, const std::vector<IntVector>& gens) {
  return make(FGAbelianGroup::free(rank), gens);
}

AffineMonoid AffineMonoid::orthant(Eigen::Index d) {
  std::vector<IntVector> g;
  for (Eigen::Index i = 0; i < d; ++i) g.push_back(unit<Integer>(d, i));
  return make(d, g);
}

std::vector<IntVector> AffineMonoid::free_parts() const {
  std::vector<IntVector> f;
  for (const auto& g : generators) f.push_back(ambient.free_part(g));
  return f;
}

RationalCone AffineMonoid::cone() const { return dual_description(free_parts(), ambient.free_rank); }

IntVector AffineMonoid::combine(const IntVector& c) const {
  IntVector s = zeros<Integer>(dim());
  for (std::size_t i = 0; i < generators.size(); ++i) s += c(static_cast<Eigen::Index>(i)) * generators[i];
  return ambient.reduce(s);
}

bool AffineMonoid::same_generators(const AffineMonoid& o) const {
  if (!ambient.same_structure(o.ambient) || generators.size() != o.generators.size()) return false;
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (!vec_equal(generators[i], o.generators[i])) return false;
  return true;
}

MemberSolver::MemberSolver(const AffineMonoid& M) : M_(M) {
  const auto& G = M_.ambient;
  cone_ = M_.cone();
  std::vector<IntVector> lin_rows = cone_.equations;
  lin_rows.insert(lin_rows.end(), cone_.facet_normals.begin(), cone_.facet_normals.end());
  std::vector<IntVector> units;
  for (std::size_t i = 0; i < M_.generators.size(); ++i) {
    IntVector f = G.free_part(M_.generators[i]);
    bool in_lin = true;
    for (const auto& r : lin_rows)
      if (dot(r, f) != 0) {
        in_lin = false;
        break;
      }
    if (in_lin) {
      unit_idx_.push_back(static_cast<int>(i));
      units.push_back(M_.generators[i]);
    } else {
      nonunit_idx_.push_back(static_cast<int>(i));
    }
  }
  if (!units.empty()) {
    // lambda_i >= 1 with sum lambda_i f_i = 0
    const Eigen::Index k = static_cast<Eigen::Index>(units.size());
    RationalPolyhedron P(k);
    for (Eigen::Index i = 0; i < k; ++i) P.ge(unit<Integer>(k, i), 1);
    for (Eigen::Index r = 0; r < G.free_rank; ++r) {
      IntVector row(k);
      for (Eigen::Index i = 0; i < k; ++i) row(i) = units[static_cast<std::size_t>(i)](r);
      P.eq(row);
    }
    auto lam = lp_optimize(P, zeros<Rational>(k), false);
    if (lam.status != LPStatus::optimal) throw std::logic_error("MemberSolver: unit relation not found");
    Integer den = common_denominator(lam.x) * G.exponent();
    unit_relation_ = IntVector(k);
    for (Eigen::Index i = 0; i < k; ++i) unit_relation_(i) = numerator(lam.x(i) * Rational(den));
    IntVector check = zeros<Integer>(G.dim());
    for (Eigen::Index i = 0; i < k; ++i) check += unit_relation_(i) * units[static_cast<std::size_t>(i)];
    if (!is_zero(G.reduce(check))) throw std::logic_error("MemberSolver: unit relation check failed");
  }
  sharp_ = quotient(G, units);
  const auto& H = sharp_.group;
  std::vector<IntVector> hf;
  for (int i : nonunit_idx_) {
    h_.push_back(sharp_.image(M_.generators[static_cast<std::size_t>(i)]));
    hf.push_back(H.free_part(h_.back()));
  }
  suffix_.resize(h_.size());
  suffix_independent_.resize(h_.size());
  for (std::size_t i = h_.size(); i-- > 0;) {
    std::vector<IntVector> tail(hf.begin() + static_cast<std::ptrdiff_t>(i), hf.end());
    suffix_[i] = dual_description(tail, H.free_rank);
    suffix_independent_[i] = rank(from_columns(tail, H.free_rank)) == static_cast<Eigen::Index>(tail.size());
  }
  grading_ = h_.empty() ? zeros<Integer>(H.free_rank) : suffix_[0].positive_functional();
}

bool MemberSolver::dfs(std::size_t i, const IntVector& rem, std::vector<Integer>& coef,
                       std::map<IntVector, bool, LexLess>& failed) const {
  const auto& H = sharp_.group;
  if (is_zero(rem)) {
    for (std::size_t j = i; j < h_.size(); ++j) coef[j] = 0;
    return true;
  }
  if (i == h_.size()) return false;
  IntVector fr = H.free_part(rem);
  if (!suffix_[i].contains(fr)) return false;
  IntVector key = concat(int_vec({static_cast<long>(i)}), rem);
  if (failed.count(key)) return false;
  if (suffix_independent_[i]) {
    std::vector<IntVector> tail;
    for (std::size_t j = i; j < h_.size(); ++j) tail.push_back(H.free_part(h_[j]));
    auto lam = lmon::solve(to_rational(from_columns(tail, H.free_rank)), to_rational(fr));
    bool ok = lam.has_value();
    IntVector sum = zeros<Integer>(H.dim());
    for (std::size_t j = i; ok && j < h_.size(); ++j) {
      const Rational& l = (*lam)(static_cast<Eigen::Index>(j - i));
      if (l < 0 || denominator(l) != 1) {
        ok = false;
        break;
      }
      coef[j] = numerator(l);
      sum += coef[j] * h_[j];
    }
    if (ok && vec_equal(H.reduce(sum), rem)) return true;
    failed[key] = true;
    return false;
  }
  Integer step = dot(grading_, H.free_part(h_[i]));
  Integer maxn = floor_div(dot(grading_, fr), step);
  if (H.free_rank == 0 || step == 0) maxn = H.exponent();
  IntVector cur = rem;
  for (Integer n = 0; n <= maxn; ++n) {
    coef[i] = n;
    if (dfs(i + 1, cur, coef, failed)) return true;
    cur = H.reduce(cur - h_[i]);
  }
  failed[key] = true;
  return false;
}

std::optional<IntVector> MemberSolver::solve(const IntVector& a0) const {
  const auto& G = M_.ambient;
  if (a0.size() != G.dim()) throw std::invalid_argument("member: ambient mismatch");
  IntVector a = G.reduce(a0);
  IntVector out = zeros<Integer>(M_.size());
  if (is_zero(a)) return out;
  if (!cone_.contains(G.free_part(a))) return std::nullopt;
  IntVector b = sharp_.image(a);
  std::vector<Integer> coef(h_.size(), Integer(0));
  std::map<IntVector, bool, LexLess> failed;
  if (!dfs(0, b, coef, failed)) return std::nullopt;
  IntVector rem = a;
  for (std::size_t j = 0; j < h_.size(); ++j) {
    out(nonunit_idx_[j]) = coef[j];
    rem -= coef[j] * M_.generators[static_cast<std::size_t>(nonunit_idx_[j])];
  }
  rem = G.reduce(rem);
  if (!unit_idx_.empty()) {
    std::vector<IntVector> units;
    for (int i : unit_idx_) units.push_back(M_.generators[static_cast<std::size_t>(i)]);
    auto c = express_in_subgroup(G, units, rem);
    if (!c) throw std::logic_error("member: unit part not in the unit group");
    Integer t = 0;
    for (Eigen::Index i = 0; i < c->size(); ++i)
      if ((*c)(i) < 0) t = std::max(t, Integer(-floor_div((*c)(i), unit_relation_(i))));
    for (Eigen::Index i = 0; i < c->size(); ++i) out(unit_idx_[static_cast<std::size_t>(i)]) = (*c)(i) + t * unit_relation_(i);
  } else if (!is_zero(rem)) {
    throw std::logic_error("member: residual outside the unit group");
  }
  if (!vec_equal(M_.combine(out), a)) throw std::logic_error("member: reconstruction failed");
  return out;
}

std::optional<IntVector> member(const AffineMonoid& M, const IntVector& a) { return MemberSolver(M).solve(a); }

namespace {

// Pulling triangulation of a pointed cone into simplicial cones, as index
// sets into `rays`.
std::vector<std::vector<int>> triangulate(const std::vector<IntVector>& rays, const std::vector<int>& idx,
                                          Eigen::Index d) {
  std::vector<IntVector> sub;
  for (int i : idx) sub.push_back(rays[static_cast<std::size_t>(i)]);
  RationalCone C = dual_description(sub, d);
  if (static_cast<Eigen::Index>(idx.size()) == C.dim()) return {idx};
  auto index_of = [&](const IntVector& r) {
    for (int i : idx)
      if (vec_equal(rays[static_cast<std::size_t>(i)], r)) return i;
    throw std::logic_error("triangulate: ray lookup failed");
  };
  const int apex = index_of(C.rays[0]);
  std::vector<std::vector<int>> out;
  for (const auto& F : face_lattice(C)) {
    if (F.dim != C.dim() - 1) continue;
    std::vector<int> fidx;
    bool has_apex = false;
    for (int r : F.rays) {
      int gi = index_of(C.rays[static_cast<std::size_t>(r)]);
      if (gi == apex) has_apex = true;
      fidx.push_back(gi);
    }
    if (has_apex) continue;
    for (auto T : triangulate(rays, fidx, d)) {
      T.push_back(apex);
      std::sort(T.begin(), T.end());
      out.push_back(T);
    }
  }
  return out;
}

// Nonzero lattice points of the half-open parallelepiped spanned by the
// independent columns of V, within Z^d ∩ span(V).
std::vector<IntVector> parallelepiped_points(const std::vector<IntVector>& cols, Eigen::Index d) {
  const Eigen::Index s = static_cast<Eigen::Index>(cols.size());
  auto eqs = orthogonal_complement(cols, d);
  IntMatrix W = eqs.empty() ? identity<Integer>(d) : integer_kernel(from_rows(eqs, d));
  IntMatrix A(s, s);
  for (Eigen::Index j = 0; j < s; ++j) {
    auto c = solve_integer(W, cols[static_cast<std::size_t>(j)]);
    if (!c) throw std::logic_error("parallelepiped: generator outside lattice");
    A.col(j) = *c;
  }
  SmithForm snf = smith_normal_form(A);
  QMatrix Ainv = inverse(to_rational(A));
  IntMatrix V = from_columns(cols, d);
  std::vector<Integer> box(static_cast<std::size_t>(s));
  for (Eigen::Index i = 0; i < s; ++i) box[static_cast<std::size_t>(i)] = snf.D(i, i);
  std::vector<IntVector> out;
  IntVector z = zeros<Integer>(s);
  for (;;) {
    IntVector y = snf.Uinv * z;
    QVector lam = Ainv * to_rational(y);
    QVector frac(s);
    for (Eigen::Index i = 0; i < s; ++i) frac(i) = lam(i) - Rational(floor(lam(i)));
    QVector pt = to_rational(V) * frac;
    if (!is_zero(pt)) out.push_back(to_integer(pt));
    Eigen::Index k = 0;
    while (k < s) {
      z(k) += 1;
      if (z(k) < box[static_cast<std::size_t>(k)]) break;
      z(k) = 0;
      ++k;
    }
    if (k == s) break;
  }
  return out;
}

std::vector<IntVector> hilbert_basis_pointed(const RationalCone& K) {
  if (!K.is_pointed()) throw std::invalid_argument("hilbert_basis: cone is not pointed");
  if (K.is_zero()) return {};
  const Eigen::Index d = K.ambient_dim;
  std::vector<int> all(K.rays.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  std::set<IntVector, LexLess> cand(K.rays.begin(), K.rays.end());
  for (const auto& T : triangulate(K.rays, all, d)) {
    std::vector<IntVector> cols;
    for (int i : T) cols.push_back(K.rays[static_cast<std::size_t>(i)]);
    for (auto& p : parallelepiped_points(cols, d)) cand.insert(p);
  }
  IntVector w = K.positive_functional();
  std::vector<IntVector> sorted(cand.begin(), cand.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const IntVector& a, const IntVector& b) { return dot(w, a) < dot(w, b); });
  std::vector<IntVector> basis;
  for (const auto& x : sorted) {
    bool reducible = false;
    for (const auto& h : basis)
      if (K.contains(IntVector(x - h))) {
        reducible = true;
        break;
      }
    if (!reducible) basis.push_back(x);
  }
  std::sort(basis.begin(), basis.end(), LexLess{});
  return basis;
}

}  // namespace

std::vector<IntVector> hilbert_basis(const RationalCone& C) { return hilbert_basis_pointed(C); }

std::vector<IntVector> hilbert_basis(const RationalCone& C, const IntMatrix& B) {
  if (!C.is_pointed()) throw std::invalid_argument("hilbert_basis: cone is not pointed");
  RationalCone K = preimage(C, B);
  std::vector<IntVector> out;
  for (const auto& h : hilbert_basis_pointed(K)) out.push_back(B * h);
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

std::vector<IntVector> lattice_cone_generators(const IntMatrix& B, const RationalCone& C) {
  const Eigen::Index r = B.cols();
  RationalCone K = preimage(C, B);
  std::vector<IntVector> out;
  if (K.is_pointed()) {
    for (const auto& h : hilbert_basis_pointed(K)) out.push_back(B * h);
    return out;
  }
  auto eqs = orthogonal_complement(K.lineality_basis, r);
  IntMatrix W = eqs.empty() ? identity<Integer>(r) : integer_kernel(from_rows(eqs, r));
  const Eigen::Index l = W.cols();
  SmithForm s = smith_normal_form(W);
  IntMatrix Y = s.Uinv;  // first l columns span the lineality lattice
  for (Eigen::Index i = 0; i < l; ++i) {
    IntVector v = B * Y.col(i);
    out.push_back(v);
    out.push_back(-v);
  }
  if (l < r) {
    IntMatrix Yr = Y.rightCols(r - l);
    RationalCone K2 = preimage(K, Yr);
    for (const auto& h : hilbert_basis_pointed(K2)) out.push_back(B * (Yr * h));
  }
  return out;
}

AffineMonoid saturated_submonoid(const FGAbelianGroup& G, const std::vector<IntVector>& group_gens,
                                 const RationalCone& K) {
  if (K.ambient_dim != G.free_rank) throw std::invalid_argument("saturated_submonoid: cone dimension mismatch");
  std::vector<IntVector> out = subgroup_torsion_generators(G, group_gens);
  if (group_gens.empty()) return AffineMonoid::make(G, out);
  std::vector<IntVector> fp;
  for (const auto& g : group_gens) fp.push_back(G.free_part(g));
  IntMatrix F = from_columns(fp, G.free_rank);
  IntMatrix B = lattice_basis(F);
  if (B.cols() > 0) {
    for (const auto& h : lattice_cone_generators(B, K)) {
      auto c = solve_integer(F, h);
      if (!c) throw std::logic_error("saturated_submonoid: lift failed");
      IntVector lift = zeros<Integer>(G.dim());
      for (std::size_t j = 0; j < group_gens.size(); ++j) lift += (*c)(static_cast<Eigen::Index>(j)) * group_gens[j];
      out.push_back(G.reduce(lift));
    }
  }
  return AffineMonoid::make(G, out);
}

AffineMonoid irredundant(const AffineMonoid& M) {
  std::vector<IntVector> gens = M.generators;
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<IntVector> others;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) others.push_back(gens[j]);
    AffineMonoid R = AffineMonoid::make(M.ambient, others);
    if (member(R, gens[i])) gens = R.generators;
  }
  return AffineMonoid::make(M.ambient, gens);
}

AffineMonoid saturate(const AffineMonoid& M) {
  AffineMonoid S = saturated_submonoid(M.ambient, M.generators, M.cone());
  if (M.ambient.is_torsion_free() && M.cone().is_pointed()) return S;
  return irredundant(S);
}

AffineMonoid saturate_in_ambient(const AffineMonoid& M) {
  std::vector<IntVector> basis;
  for (Eigen::Index i = 0; i < M.dim(); ++i) basis.push_back(unit<Integer>(M.dim(), i));
  AffineMonoid S = saturated_submonoid(M.ambient, basis, M.cone());
  if (M.ambient.is_torsion_free() && M.cone().is_pointed()) return S;
  return irredundant(S);
}

FGAbelianGroup group_envelope(const AffineMonoid& M) { return subgroup_structure(M.ambient, M.generators); }

FGAbelianGroup units(const AffineMonoid& M) {
  MemberSolver s(M);
  std::vector<IntVector> u;
  for (int i : s.unit_generators()) u.push_back(M.generators[static_cast<std::size_t>(i)]);
  return subgroup_structure(M.ambient, u);
}

Sharpened sharpen(const AffineMonoid& M) {
  MemberSolver s(M);
  std::vector<IntVector> u;
  for (int i : s.unit_generators()) u.push_back(M.generators[static_cast<std::size_t>(i)]);
  Sharpened out;
  out.quotient = quotient(M.ambient, u);
  std::vector<IntVector> img;
  for (const auto& g : M.generators) img.push_back(out.quotient.image(g));
  out.monoid = AffineMonoid::make(out.quotient.group, img);
  return out;
}

QVector ScaledMonoid::to_rational(const IntVector& v) const {
  QVector q(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) q(i) = Rational(v(i)) / Rational(level);
  return q;
}

ScaledMonoid scale(const AffineMonoid& M, const Integer& n) {
  if (n < 1) throw std::invalid_argument("scale: level must be positive");
  if (!M.ambient.is_torsion_free()) throw std::invalid_argument("scale: torsion ambient");
  if (!is_saturated(M)) throw std::invalid_argument("scale: monoid is not saturated");
  ScaledMonoid s;
  s.monoid = M;
  s.level = n;
  s.inclusion = identity<Integer>(M.dim()) * n;
  return s;
}

AffineMonoid localize(const AffineMonoid& M, const std::vector<IntVector>& elements) {
  std::vector<IntVector> g = M.generators;
  for (const auto& e : elements) {
    if (!member(M, e)) throw std::invalid_argument("localize: element not in the monoid");
    g.push_back(M.ambient.neg(e));
  }
  return AffineMonoid::make(M.ambient, g);
}

bool is_saturated(const AffineMonoid& M) {
  AffineMonoid S = saturated_submonoid(M.ambient, M.generators, M.cone());
  MemberSolver solver(M);
  for (const auto& g : S.generators)
    if (!solver.contains(g)) return false;
  return true;
}

bool is_sharp(const AffineMonoid& M) { return MemberSolver(M).unit_generators().empty(); }

bool is_divisible_upto(const AffineMonoid& M, int n, const std::vector<IntVector>& elements) {
  const auto& G = M.ambient;
  const auto& es = elements.empty() ? M.generators : elements;
  MemberSolver solver(M);
  std::vector<IntVector> torsion{G.zero()};
  if (!G.is_torsion_free()) {
    std::vector<IntVector> tg;
    for (Eigen::Index i = 0; i < G.torsion_rank(); ++i) tg.push_back(unit<Integer>(G.dim(), G.free_rank + i));
    torsion = enumerate_finite_subgroup(G, tg);
  }
  for (const auto& e : es)
    for (int k = 2; k <= n; ++k) {
      IntVector f = G.free_part(e);
      bool divisible = true;
      IntVector base = zeros<Integer>(G.dim());
      for (Eigen::Index i = 0; i < f.size(); ++i) {
        if (f(i) % k != 0) divisible = false;
        else base(i) = f(i) / k;
      }
      bool found = false;
      for (const auto& t : torsion) {
        if (!divisible) break;
        IntVector m = G.reduce(base + t);
        if (vec_equal(G.reduce(IntVector(Integer(k) * m)), G.reduce(e)) && solver.contains(m)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  return true;
}

}  // namespace lmon
