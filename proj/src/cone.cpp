#include "lmon/cone.hpp"

#include "lmon/linalg.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace lmon {

namespace {

// Calls fn on every k-subset of {0..n-1} in lexicographic order; fn may
// return false to stop.
void for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    if (!fn(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::vector<IntVector> dedupe_primitive(const std::vector<IntVector>& vs) {
  std::set<IntVector, LexLess> s;
  for (const auto& v : vs)
    if (!is_zero(v)) s.insert(primitive(v));
  return {s.begin(), s.end()};
}

Rational dotq(const IntVector& a, const QVector& x) { return dot(a, x); }

struct RaysAndLineality {
  std::vector<IntVector> rays;
  std::vector<IntVector> lineality;
};

RaysAndLineality extreme_rays(const std::vector<IntVector>& ineqs, const std::vector<IntVector>& eqs,
                              Eigen::Index d) {
  RaysAndLineality out;
  std::vector<IntVector> all = ineqs;
  all.insert(all.end(), eqs.begin(), eqs.end());
  out.lineality = orthogonal_complement(all, d);
  {
    // orthogonal_complement of the rows gives the common kernel
  }
  std::vector<IntVector> eprime = eqs;
  eprime.insert(eprime.end(), out.lineality.begin(), out.lineality.end());
  eprime = canonical_row_basis(eprime, d);
  const Eigen::Index s = d - static_cast<Eigen::Index>(eprime.size());
  if (s <= 0) return out;
  std::set<IntVector, LexLess> rays;
  const int n = static_cast<int>(ineqs.size());
  for_each_subset(n, static_cast<int>(s - 1), [&](const std::vector<int>& T) {
    std::vector<IntVector> rows = eprime;
    for (int t : T) rows.push_back(ineqs[static_cast<std::size_t>(t)]);
    QMatrix M = rows.empty() ? zeros<Rational>(0, d) : to_rational(from_rows(rows, d));
    QMatrix ns = nullspace(M);
    if (ns.cols() != 1) return true;
    IntVector v = primitive(QVector(ns.col(0)));
    bool pos = true, neg = true;
    for (const auto& a : ineqs) {
      int sg = sign(dot(a, v));
      if (sg < 0) pos = false;
      if (sg > 0) neg = false;
    }
    if (pos && !neg) rays.insert(v);
    else if (neg && !pos) rays.insert(IntVector(-v));
    else if (pos && neg) {
      // no inequality sees v; only possible when there are none
      rays.insert(v);
    }
    return true;
  });
  out.rays.assign(rays.begin(), rays.end());
  return out;
}

}  // namespace

RationalPolyhedron& RationalPolyhedron::ge(const IntVector& a, const Rational& b) {
  rows.push_back({a, b, RowKind::ge});
  return *this;
}
RationalPolyhedron& RationalPolyhedron::gt(const IntVector& a, const Rational& b) {
  rows.push_back({a, b, RowKind::gt});
  return *this;
}
RationalPolyhedron& RationalPolyhedron::eq(const IntVector& a, const Rational& b) {
  rows.push_back({a, b, RowKind::eq});
  return *this;
}

bool RationalPolyhedron::has_strict() const {
  for (const auto& r : rows)
    if (r.kind == RowKind::gt) return true;
  return false;
}

bool RationalPolyhedron::satisfied_by(const QVector& x) const {
  for (const auto& r : rows) {
    Rational v = dotq(r.normal, x);
    if (r.kind == RowKind::ge && v < r.offset) return false;
    if (r.kind == RowKind::gt && v <= r.offset) return false;
    if (r.kind == RowKind::eq && v != r.offset) return false;
  }
  return true;
}

bool RationalCone::contains(const QVector& x) const {
  for (const auto& e : equations)
    if (dotq(e, x) != 0) return false;
  for (const auto& n : facet_normals)
    if (dotq(n, x) < 0) return false;
  return true;
}

bool RationalCone::in_span(const QVector& x) const {
  for (const auto& e : equations)
    if (dotq(e, x) != 0) return false;
  return true;
}

std::vector<int> RationalCone::tight_set(const QVector& x) const {
  std::vector<int> t;
  for (std::size_t i = 0; i < facet_normals.size(); ++i)
    if (dotq(facet_normals[i], x) == 0) t.push_back(static_cast<int>(i));
  return t;
}

bool RationalCone::cross_validate() const {
  for (const auto& g : all_generators()) {
    if (!contains(g)) return false;
  }
  auto gens = all_generators();
  for (const auto& n : facet_normals) {
    std::vector<IntVector> tight;
    bool strictly_positive_somewhere = false;
    for (const auto& g : gens) {
      if (dot(n, g) == 0) tight.push_back(g);
      else strictly_positive_somewhere = true;
    }
    if (!strictly_positive_somewhere) return false;
    Eigen::Index r = tight.empty() ? 0 : rank(from_rows(tight, ambient_dim));
    if (r < dim() - 1) return false;
  }
  return true;
}

std::vector<IntVector> RationalCone::all_generators() const {
  std::vector<IntVector> g = rays;
  for (const auto& l : lineality_basis) {
    g.push_back(l);
    g.push_back(-l);
  }
  return g;
}

IntVector RationalCone::positive_functional() const {
  if (!is_pointed()) throw std::invalid_argument("positive_functional: cone not pointed");
  IntVector w = zeros<Integer>(ambient_dim);
  for (const auto& n : facet_normals) w += n;
  if (facet_normals.empty() && dim() > 0) {
    // a pointed cone of positive dimension always has facets
    throw std::logic_error("positive_functional: pointed cone without facets");
  }
  return w;
}

bool RationalCone::same_set(const RationalCone& o) const {
  if (ambient_dim != o.ambient_dim || equations.size() != o.equations.size() ||
      facet_normals.size() != o.facet_normals.size())
    return false;
  for (std::size_t i = 0; i < equations.size(); ++i)
    if (!vec_equal(equations[i], o.equations[i])) return false;
  for (std::size_t i = 0; i < facet_normals.size(); ++i)
    if (!vec_equal(facet_normals[i], o.facet_normals[i])) return false;
  return true;
}

RationalPolyhedron RationalCone::as_polyhedron() const {
  RationalPolyhedron P(ambient_dim);
  add_cone_constraints(P, *this, 0);
  return P;
}

RationalCone dual_description(const std::vector<IntVector>& generators, Eigen::Index d) {
  for (const auto& g : generators)
    if (g.size() != d) throw std::invalid_argument("dual_description: generator dimension mismatch");
  RationalCone C;
  C.ambient_dim = d;
  C.generators = dedupe_primitive(generators);
  C.equations = orthogonal_complement(C.generators, d);
  const Eigen::Index s = d - static_cast<Eigen::Index>(C.equations.size());
  if (s == 0) return C;
  std::vector<IntVector> basis_rows = canonical_row_basis(C.generators, d);
  IntMatrix B = from_columns(basis_rows, d);  // d x s
  QMatrix Bq = to_rational(B);
  std::set<IntVector, LexLess> normals;
  const int n = static_cast<int>(C.generators.size());
  for_each_subset(n, static_cast<int>(s - 1), [&](const std::vector<int>& T) {
    QMatrix M = zeros<Rational>(static_cast<Eigen::Index>(T.size()), s);
    for (std::size_t i = 0; i < T.size(); ++i)
      M.row(static_cast<Eigen::Index>(i)) =
          to_rational(C.generators[static_cast<std::size_t>(T[i])]).transpose() * Bq;
    QMatrix ns = nullspace(M);
    if (ns.cols() != 1) return true;
    IntVector nv = primitive(QVector(Bq * ns.col(0)));
    bool pos = true, neg = true;
    for (const auto& g : C.generators) {
      int sg = sign(dot(nv, g));
      if (sg < 0) pos = false;
      if (sg > 0) neg = false;
    }
    if (pos && !neg) normals.insert(nv);
    else if (neg && !pos) normals.insert(IntVector(-nv));
    return true;
  });
  C.facet_normals.assign(normals.begin(), normals.end());
  std::vector<IntVector> rows = C.equations;
  rows.insert(rows.end(), C.facet_normals.begin(), C.facet_normals.end());
  C.lineality_basis = orthogonal_complement(rows, d);
  C.rays = extreme_rays(C.facet_normals, C.equations, d).rays;
  return C;
}

RationalCone dual_description(const std::vector<QVector>& generators, Eigen::Index d) {
  std::vector<IntVector> g;
  for (const auto& v : generators) g.push_back(primitive(v));
  return dual_description(g, d);
}

RationalCone cone_from_inequalities(const std::vector<IntVector>& ineqs, const std::vector<IntVector>& eqs,
                                    Eigen::Index d) {
  auto rl = extreme_rays(ineqs, eqs, d);
  std::vector<IntVector> gens = rl.rays;
  for (const auto& l : rl.lineality) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  return dual_description(gens, d);
}

RationalCone whole_space(Eigen::Index d) { return cone_from_inequalities({}, {}, d); }

RationalCone intersect(const RationalCone& a, const RationalCone& b) {
  if (a.ambient_dim != b.ambient_dim) throw std::invalid_argument("intersect: dimension mismatch");
  std::vector<IntVector> ineqs = a.facet_normals, eqs = a.equations;
  ineqs.insert(ineqs.end(), b.facet_normals.begin(), b.facet_normals.end());
  eqs.insert(eqs.end(), b.equations.begin(), b.equations.end());
  return cone_from_inequalities(ineqs, eqs, a.ambient_dim);
}

RationalCone preimage(const RationalCone& c, const IntMatrix& A) {
  if (A.rows() != c.ambient_dim) throw std::invalid_argument("preimage: dimension mismatch");
  std::vector<IntVector> ineqs, eqs;
  for (const auto& n : c.facet_normals) ineqs.push_back(A.transpose() * n);
  for (const auto& e : c.equations) eqs.push_back(A.transpose() * e);
  return cone_from_inequalities(ineqs, eqs, A.cols());
}

RationalCone negate(const RationalCone& c) {
  std::vector<IntVector> g;
  for (const auto& v : c.all_generators()) g.push_back(-v);
  return dual_description(g, c.ambient_dim);
}

namespace {

std::vector<int> closure(const RationalCone& C, const std::vector<int>& T) {
  std::vector<int> R;
  for (std::size_t r = 0; r < C.rays.size(); ++r) {
    bool in = true;
    for (int i : T)
      if (dot(C.facet_normals[static_cast<std::size_t>(i)], C.rays[r]) != 0) {
        in = false;
        break;
      }
    if (in) R.push_back(static_cast<int>(r));
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < C.facet_normals.size(); ++i) {
    bool tight = true;
    for (int r : R)
      if (dot(C.facet_normals[i], C.rays[static_cast<std::size_t>(r)]) != 0) {
        tight = false;
        break;
      }
    if (tight) out.push_back(static_cast<int>(i));
  }
  return out;
}

Face make_face(const RationalCone& C, const std::vector<int>& T) {
  Face F;
  F.tight_facets = T;
  std::vector<IntVector> gens = C.lineality_basis;
  for (std::size_t r = 0; r < C.rays.size(); ++r) {
    bool in = true;
    for (int i : T)
      if (dot(C.facet_normals[static_cast<std::size_t>(i)], C.rays[r]) != 0) {
        in = false;
        break;
      }
    if (in) {
      F.rays.push_back(static_cast<int>(r));
      gens.push_back(C.rays[r]);
    }
  }
  F.dim = gens.empty() ? 0 : rank(from_rows(gens, C.ambient_dim));
  return F;
}

}  // namespace

std::vector<Face> face_lattice(const RationalCone& C) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> order;
  std::vector<std::vector<int>> frontier{closure(C, {})};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& T : frontier) {
      order.push_back(T);
      for (std::size_t j = 0; j < C.facet_normals.size(); ++j) {
        if (std::binary_search(T.begin(), T.end(), static_cast<int>(j))) continue;
        std::vector<int> T2 = T;
        T2.push_back(static_cast<int>(j));
        std::sort(T2.begin(), T2.end());
        T2 = closure(C, T2);
        if (seen.insert(T2).second) next.push_back(T2);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Face> faces;
  for (const auto& T : order) faces.push_back(make_face(C, T));
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.tight_facets > b.tight_facets;
  });
  return faces;
}

Face face_of_point(const RationalCone& C, const QVector& x) { return make_face(C, C.tight_set(x)); }

bool is_face(const RationalCone& C, const Face& F) {
  for (int i : F.tight_facets)
    if (i < 0 || i >= static_cast<int>(C.facet_normals.size())) return false;
  if (!std::is_sorted(F.tight_facets.begin(), F.tight_facets.end())) return false;
  return closure(C, F.tight_facets) == F.tight_facets;
}

bool face_contains(const RationalCone& C, const Face& F, const QVector& x) {
  if (!C.contains(x)) return false;
  for (int i : F.tight_facets)
    if (dot(C.facet_normals[static_cast<std::size_t>(i)], x) != 0) return false;
  return true;
}

bool in_relative_interior(const RationalCone& C, const Face& F, const QVector& x) {
  if (!C.contains(x)) return false;
  return C.tight_set(x) == F.tight_facets;
}

RationalCone face_cone(const RationalCone& C, const Face& F) {
  std::vector<IntVector> eqs = C.equations;
  for (int i : F.tight_facets) eqs.push_back(C.facet_normals[static_cast<std::size_t>(i)]);
  return cone_from_inequalities(C.facet_normals, eqs, C.ambient_dim);
}

RationalCone tangent_cone(const RationalCone& C, const Face& F) {
  if (!is_face(C, F)) throw std::invalid_argument("tangent_cone: not a face of the cone");
  std::vector<IntVector> ineqs;
  for (int i : F.tight_facets) ineqs.push_back(C.facet_normals[static_cast<std::size_t>(i)]);
  return cone_from_inequalities(ineqs, C.equations, C.ambient_dim);
}

namespace {
IntVector embed(const IntVector& a, Eigen::Index total, Eigen::Index offset) {
  IntVector v = zeros<Integer>(total);
  v.segment(offset, a.size()) = a;
  return v;
}
}  // namespace

void add_cone_constraints(RationalPolyhedron& P, const RationalCone& C, Eigen::Index offset) {
  for (const auto& e : C.equations) P.eq(embed(e, P.dim, offset));
  for (const auto& n : C.facet_normals) P.ge(embed(n, P.dim, offset));
}

void add_relint_constraints(RationalPolyhedron& P, const RationalCone& C, const Face& F, Eigen::Index offset) {
  for (const auto& e : C.equations) P.eq(embed(e, P.dim, offset));
  for (std::size_t i = 0; i < C.facet_normals.size(); ++i) {
    bool tight = std::binary_search(F.tight_facets.begin(), F.tight_facets.end(), static_cast<int>(i));
    if (tight) P.eq(embed(C.facet_normals[i], P.dim, offset));
    else P.gt(embed(C.facet_normals[i], P.dim, offset));
  }
}

StrictStandardForm strict_standard_form(const RationalPolyhedron& P) {
  const Eigen::Index d = P.dim;
  Eigen::Index nslack = 1;
  for (const auto& r : P.rows)
    if (r.kind != RowKind::eq) ++nslack;
  const Eigen::Index m = static_cast<Eigen::Index>(P.rows.size()) + 1;
  const Eigen::Index n = 2 * d + 1 + nslack;
  StrictStandardForm S;
  S.dim = d;
  S.A = zeros<Rational>(m, n);
  S.b = zeros<Rational>(m);
  Eigen::Index slack = 2 * d + 1;
  for (std::size_t k = 0; k < P.rows.size(); ++k) {
    const auto& r = P.rows[k];
    if (r.normal.size() != d) throw std::invalid_argument("polyhedron row has wrong dimension");
    const Eigen::Index i = static_cast<Eigen::Index>(k);
    Integer q = denominator(r.offset), p = numerator(r.offset);
    for (Eigen::Index j = 0; j < d; ++j) {
      S.A(i, j) = Rational(q * r.normal(j));
      S.A(i, d + j) = Rational(-q * r.normal(j));
    }
    S.A(i, 2 * d) = Rational(-p);
    if (r.kind != RowKind::eq) S.A(i, slack++) = -1;
    S.b(i) = r.kind == RowKind::gt ? 1 : 0;
  }
  S.A(m - 1, 2 * d) = 1;
  S.A(m - 1, slack) = -1;
  S.b(m - 1) = 1;
  return S;
}

StrictResult lp_feasible_strict_certified(const RationalPolyhedron& P) {
  StrictStandardForm S = strict_standard_form(P);
  LPResult r = simplex(S.A, S.b, zeros<Rational>(S.A.cols()));
  StrictResult out;
  if (r.status == LPStatus::infeasible) {
    out.farkas = r.farkas;
    return out;
  }
  const Eigen::Index d = P.dim;
  QVector x(d);
  Rational lambda = r.x(2 * d);
  for (Eigen::Index j = 0; j < d; ++j) x(j) = (r.x(j) - r.x(d + j)) / lambda;
  if (!P.satisfied_by(x)) throw std::logic_error("lp_feasible_strict: witness check failed");
  out.witness = x;
  return out;
}

std::optional<QVector> lp_feasible_strict(const RationalPolyhedron& P) {
  return lp_feasible_strict_certified(P).witness;
}

LPResult lp_optimize(const RationalPolyhedron& P, const QVector& objective, bool maximize) {
  const Eigen::Index d = P.dim;
  Eigen::Index nslack = 0;
  for (const auto& r : P.rows) {
    if (r.kind == RowKind::gt) throw std::invalid_argument("lp_optimize: strict rows not supported");
    if (r.kind == RowKind::ge) ++nslack;
  }
  const Eigen::Index m = static_cast<Eigen::Index>(P.rows.size());
  QMatrix A = zeros<Rational>(m, 2 * d + nslack);
  QVector b(m), c = zeros<Rational>(2 * d + nslack);
  Eigen::Index slack = 2 * d;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& r = P.rows[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < d; ++j) {
      A(i, j) = Rational(r.normal(j));
      A(i, d + j) = Rational(-r.normal(j));
    }
    if (r.kind == RowKind::ge) A(i, slack++) = -1;
    b(i) = r.offset;
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    Rational cj = maximize ? Rational(-objective(j)) : objective(j);
    c(j) = cj;
    c(d + j) = -cj;
  }
  LPResult r = simplex(A, b, c);
  if (r.status != LPStatus::optimal) return r;
  QVector x(d);
  for (Eigen::Index j = 0; j < d; ++j) x(j) = r.x(j) - r.x(d + j);
  r.x = x;
  r.value = dot(objective, x);
  return r;
}

bool is_bounded(const RationalPolyhedron& P) {
  std::vector<IntVector> ineqs, eqs;
  for (const auto& r : P.rows) {
    if (r.kind == RowKind::eq) eqs.push_back(r.normal);
    else ineqs.push_back(r.normal);
  }
  auto rl = extreme_rays(ineqs, eqs, P.dim);
  return rl.rays.empty() && rl.lineality.empty();
}

std::vector<QVector> polytope_vertices(const RationalPolyhedron& P) {
  if (P.has_strict()) throw std::invalid_argument("polytope_vertices: strict rows not supported");
  if (lp_optimize(P, zeros<Rational>(P.dim), false).status == LPStatus::infeasible) return {};
  if (!is_bounded(P)) throw std::invalid_argument("polytope_vertices: polyhedron is unbounded");
  const Eigen::Index d = P.dim;
  std::vector<const Halfspace*> E, G;
  for (const auto& r : P.rows) (r.kind == RowKind::eq ? E : G).push_back(&r);
  std::vector<IntVector> enorm;
  for (auto* e : E) enorm.push_back(e->normal);
  Eigen::Index re = enorm.empty() ? 0 : rank(from_rows(enorm, d));
  std::set<QVector, LexLess> verts;
  for_each_subset(static_cast<int>(G.size()), static_cast<int>(d - re), [&](const std::vector<int>& T) {
    std::vector<const Halfspace*> rows = E;
    for (int t : T) rows.push_back(G[static_cast<std::size_t>(t)]);
    QMatrix M(static_cast<Eigen::Index>(rows.size()), d);
    QVector rhs(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      M.row(static_cast<Eigen::Index>(i)) = to_rational(rows[i]->normal).transpose();
      rhs(static_cast<Eigen::Index>(i)) = rows[i]->offset;
    }
    if (rank(M) != d) return true;
    auto x = solve(M, rhs);
    if (x && P.satisfied_by(*x)) verts.insert(*x);
    return true;
  });
  return {verts.begin(), verts.end()};
}

bool is_trivial_intersection(const RationalCone& C1, const RationalCone& C2) {
  if (C1.ambient_dim != C2.ambient_dim) throw std::invalid_argument("is_trivial_intersection: dimension mismatch");
  const Eigen::Index d = C1.ambient_dim;
  for (Eigen::Index i = 0; i < d; ++i)
    for (int s : {1, -1}) {
      RationalPolyhedron P(d);
      add_cone_constraints(P, C1, 0);
      add_cone_constraints(P, C2, 0);
      IntVector e = zeros<Integer>(d);
      e(i) = s;
      P.gt(e);
      if (lp_feasible_strict(P)) return false;
    }
  return true;
}

}  // namespace lmon
