#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lmon/hom.hpp"
#include "lmon/linalg.hpp"

#include <numeric>
#include <random>

using namespace lmon;

namespace {
std::vector<IntVector> vs(std::initializer_list<std::initializer_list<long>> xs) {
  std::vector<IntVector> out;
  for (auto x : xs) out.push_back(int_vec(x));
  return out;
}

PairNP pair_in_orthant(Eigen::Index d, std::initializer_list<std::initializer_list<long>> n) {
  return PairNP::make(AffineMonoid::orthant(d), vs(n));
}

MonoidHom ray_map(std::initializer_list<long> img) {
  IntVector v = int_vec(img);
  IntMatrix A(v.size(), 1);
  A.col(0) = v;
  return MonoidHom::make(AffineMonoid::orthant(1), AffineMonoid::orthant(v.size()), A);
}

MonoidHom m_plane() {
  AffineMonoid M = AffineMonoid::make(3, vs({{1, 0, 1}, {0, 1, 1}}));
  return MonoidHom::make(M, AffineMonoid::orthant(3), identity<Integer>(3));
}

// Uniqueness by a direct LP test: the maximizer q* of the grading over
// Y' = {q in cone N, x - q in cone P} must dominate Y' in the N-order.
bool unique_by_domination(const PairNP& pr, const QVector& x) {
  const Eigen::Index m = pr.dim();
  RationalPolyhedron Y(m);
  add_cone_constraints(Y, pr.coneN, 0);
  for (const auto& e : pr.coneP.equations) Y.eq(e, dot(e, x));
  for (const auto& h : pr.coneP.facet_normals) Y.ge(IntVector(-h), Rational(-dot(h, x)));
  IntVector w = zeros<Integer>(m);
  for (const auto& n : pr.coneN.facet_normals) w += n;
  QVector wq = to_rational(w);
  // any functional positive on N works; pick the facet sum projected into span N
  LPResult best = lp_optimize(Y, wq, true);
  REQUIRE(best.status == LPStatus::optimal);
  for (const auto& n : pr.coneN.facet_normals) {
    LPResult r = lp_optimize(Y, to_rational(n), true);
    if (r.value > dot(n, best.x)) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("minimal decompositions of the worked examples") {
  auto pr = pair_in_orthant(2, {{1, 1}});
  auto d = minimal_decompositions(pr, q_vec({3, 1}));
  REQUIRE(d.points.size() == 1);
  CHECK(d.unique());
  CHECK(vec_equal(d.points[0].y_part, q_vec({2, 0})));
  CHECK(vec_equal(d.points[0].n_part, q_vec({1, 1})));

  auto pr2 = pair_in_orthant(2, {{1, 2}, {2, 1}});
  auto d2 = minimal_decompositions(pr2, q_vec({3, 1}));
  REQUIRE(d2.points.size() == 2);
  CHECK(vec_equal(d2.points[0].y_part, q_vec({1, 0})));
  CHECK(vec_equal(d2.points[0].n_part, q_vec({2, 1})));
  CHECK(vec_equal(d2.points[1].y_part, q_vec({Rational(5, 2), 0})));
  CHECK(vec_equal(d2.points[1].n_part, q_vec({Rational(1, 2), 1})));
  CHECK_FALSE(d2.unique());

  auto pr3 = pair_in_orthant(3, {{1, 0, 0}, {0, 1, 1}});
  auto d3 = minimal_decompositions(pr3, q_vec({2, 2, 1}));
  REQUIRE(d3.points.size() == 1);
  CHECK(vec_equal(d3.points[0].y_part, q_vec({0, 1, 0})));
  CHECK(vec_equal(d3.points[0].n_part, q_vec({2, 1, 1})));

  auto pm = pair_in_orthant(3, {{1, 0, 1}, {0, 1, 1}});
  auto d4 = minimal_decompositions(pm, q_vec({1, 1, 1}));
  REQUIRE(d4.points.size() == 2);
  CHECK(vec_equal(d4.points[0].y_part, q_vec({0, 1, 0})));
  CHECK(vec_equal(d4.points[0].n_part, q_vec({1, 0, 1})));
  CHECK(vec_equal(d4.points[1].y_part, q_vec({1, 0, 0})));
  CHECK(vec_equal(d4.points[1].n_part, q_vec({0, 1, 1})));
}

TEST_CASE("minimal faces") {
  auto pr = pair_in_orthant(2, {{1, 1}});
  auto mf = minimal_faces(pr);
  CHECK(mf.size() == 3);
  for (const auto& F : mf) CHECK(F.dim <= 1);

  auto deg = PairNP::make(AffineMonoid::orthant(2), {});
  CHECK(minimal_faces(deg).size() == face_lattice(deg.coneP).size());
}

TEST_CASE("pseudo-saturation verdicts") {
  auto c1 = is_pseudo_saturated(pair_in_orthant(2, {{1, 1}}));
  CHECK(c1.pseudo_saturated);
  CHECK_FALSE(c1.witness);
  // all face pairs recorded with certificates
  std::size_t nf = c1.minimal_faces.size();
  CHECK(c1.table.size() == nf * (nf + 1) / 2);
  for (const auto& rec : c1.table) {
    CHECK_FALSE(rec.feasible);
    REQUIRE(rec.farkas.size() == rec.probes.size());
    for (std::size_t k = 0; k < rec.probes.size(); ++k) {
      auto S = strict_standard_form(face_pair_system(pair_in_orthant(2, {{1, 1}}),
                                                     c1.minimal_faces[static_cast<std::size_t>(rec.face1)],
                                                     c1.minimal_faces[static_cast<std::size_t>(rec.face2)],
                                                     rec.probes[k].first, rec.probes[k].second));
      CHECK(check_farkas(S.A, S.b, rec.farkas[k]));
    }
  }

  CHECK(is_pseudo_saturated(PairNP::from_hom(ray_map({1, 2}))).pseudo_saturated);

  auto pm = PairNP::from_hom(m_plane());
  auto c3 = is_pseudo_saturated(pm);
  CHECK_FALSE(c3.pseudo_saturated);
  REQUIRE(c3.witness);
  CHECK(vec_equal(c3.witness->x, q_vec({1, 1, 1})));
  CHECK(verify_witness(pm, *c3.witness));
  CHECK(is_exact(m_plane()).exact);

  CHECK_FALSE(is_pseudo_saturated(pair_in_orthant(2, {{1, 2}, {2, 1}})).pseudo_saturated);
  auto deg = is_pseudo_saturated(PairNP::make(AffineMonoid::orthant(2), {}));
  CHECK(deg.pseudo_saturated);
  CHECK(deg.degenerate);
}

TEST_CASE("pair validation") {
  CHECK_THROWS_AS(PairNP::make(AffineMonoid::orthant(2), vs({{1, -1}})), std::invalid_argument);
  CHECK_THROWS_AS(PairNP::make(AffineMonoid::make(1, vs({{2}, {3}})), vs({{2}})), std::invalid_argument);
  CHECK_THROWS_AS(PairNP::make(AffineMonoid::make(2, vs({{1, 0}, {-1, 0}, {0, 1}})), vs({{1, 0}})),
                  std::invalid_argument);  // P meets -N
  CHECK_THROWS_AS(PairNP::make(AffineMonoid::orthant(1), vs({{2}, {3}})), std::invalid_argument);  // not toric
}

TEST_CASE("conductors") {
  auto b = conductor_bound(PairNP::from_hom(ray_map({1, 2})));
  CHECK(b.refined == 2);
  CHECK(b.certified >= 2);
  CHECK(b.meaningful);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 12; ++t) {
    int r = 1 + static_cast<int>(rng() % 3);
    std::vector<long> ns;
    long l = 1;
    for (int i = 0; i < r; ++i) {
      long v = static_cast<long>(rng() % 7);
      ns.push_back(v);
      if (v) l = std::lcm(l, v);
    }
    if (l == 1 && std::all_of(ns.begin(), ns.end(), [](long v) { return v == 0; })) continue;
    IntMatrix A(r, 1);
    for (int i = 0; i < r; ++i) A(i, 0) = ns[static_cast<std::size_t>(i)];
    auto u = MonoidHom::make(AffineMonoid::orthant(1), AffineMonoid::orthant(r), A);
    auto c = conductor_bound(PairNP::from_hom(u));
    CHECK(c.refined == l);
    CHECK(c.certified % c.refined == 0);
  }

  for (long m = 1; m <= 5; ++m) {
    auto c = conductor_bound(PairNP::from_hom(ray_map({m})));
    CHECK(Integer(m) % c.refined == 0);
  }
  CHECK_FALSE(conductor_bound(PairNP::from_hom(m_plane())).meaningful);
}

TEST_CASE("exactness and integrality") {
  CHECK(is_exact(identity_hom(AffineMonoid::orthant(2))).exact);
  CHECK(is_exact(ray_map({1, 2})).exact);
  // Z_{>=0} inside Z: the preimage is all of Z
  auto sub = MonoidHom::make(AffineMonoid::orthant(1), AffineMonoid::make(1, vs({{1}, {-1}})), int_mat({{1}}));
  auto e = is_exact(sub);
  CHECK_FALSE(e.exact);
  REQUIRE(e.counterexample);
  CHECK((*e.counterexample)(0) < 0);

  CHECK(is_integral(identity_hom(AffineMonoid::orthant(2))).integral);
  CHECK(is_integral(ray_map({1, 1})).integral);
  CHECK(is_integral(ray_map({1, 1, 1})).integral);
  CHECK(is_integral(ray_map({1, 2})).integral);
  auto bad = MonoidHom::make(AffineMonoid::orthant(2), AffineMonoid::orthant(2), int_mat({{1, 0}, {1, 1}}));
  auto ir = is_integral(bad);
  CHECK_FALSE(ir.integral);
  CHECK(ir.failing_solution);
}

TEST_CASE("quasi-saturation") {
  auto id = identity_hom(AffineMonoid::orthant(2));
  for (int p : {2, 3, 5}) CHECK(is_p_quasi_saturated(id, p).passes);
  auto c = is_p_quasi_saturated(ray_map({1, 2}), 2);
  CHECK_FALSE(c.passes);
  CHECK(c.certificate);
  // x = 1, y = (1,1), n = 3: u(x) | 3y but no x' >= 1 has u(x') | y
  CHECK_FALSE(is_p_quasi_saturated(ray_map({1, 2}), 3).passes);
  auto rep = is_quasi_saturated(ray_map({1, 1}), {2, 3, 5});
  CHECK(rep.all_pass());
  CHECK(rep.describe() == "quasi-saturated on {2,3,5}");
  CHECK(is_quasi_saturated(ray_map({1, 2}), {2, 3}).describe() == "fails at p=2");
  auto def = is_quasi_saturated(ray_map({1, 1}));
  CHECK(def.heuristic_primes);
  CHECK(default_primes(ray_map({2})) == std::vector<int>{2, 3, 5, 7});
}

TEST_CASE("conductor property spot checks") {
  auto id = identity_hom(AffineMonoid::orthant(2));
  CHECK(check_conductor_property(id, 1, 40, 1).all_passed());
  auto u = ray_map({1, 2});
  CHECK(check_conductor_property(u, 2, 200, 11).all_passed());
  auto t = conductor_trial(u, 1, 2, int_vec({1}), int_vec({1, 1}));
  CHECK_FALSE(t.x_prime);
  auto t2 = conductor_trial(u, 2, 2, int_vec({1}), int_vec({1, 1}));
  CHECK(t2.x_prime);

  auto mp = m_plane();
  for (long M = 1; M <= 4; ++M) {
    auto f = find_conductor_failure(mp, M, int_vec({1, 1, 1}), static_cast<int>(4 * M + 4), 2);
    REQUIRE(f);
    CHECK_FALSE(conductor_trial(mp, M, f->n, f->x, f->y).x_prime);
  }
}

TEST_CASE("reductions and charts") {
  AffineMonoid P = AffineMonoid::make(2, vs({{1, 0}, {0, 1}, {0, -1}}));
  auto s = sharpen_hom(identity_hom(P));
  CHECK(s.source.dim() == 1);
  CHECK(s.source.generators.size() == 1);
  CHECK(is_sharp(s.source));

  auto loc = localize_hom(identity_hom(AffineMonoid::orthant(2)), vs({{1, 0}}), {});
  CHECK(member(loc.target, int_vec({-3, 0})));
  CHECK_FALSE(member(loc.target, int_vec({0, -1})));

  auto r1 = validate_small_chart(ray_map({1, 1}), {2, 3});
  CHECK(r1.valid());
  auto r2 = validate_small_chart(ray_map({1, 2}), {2, 3});
  CHECK_FALSE(r2.valid());
  for (const auto& c : r2.checks) CHECK(c.passed == (c.name != "quasi-saturated"));
  auto r3 = validate_small_chart(m_plane(), {2, 3});
  CHECK_FALSE(r3.valid());
  for (const auto& c : r3.checks)
    if (c.name == "pseudo-saturated") CHECK_FALSE(c.passed);
}

TEST_CASE("decomposition properties") {
  std::vector<PairNP> pairs{pair_in_orthant(2, {{1, 1}}), PairNP::from_hom(ray_map({1, 2})),
                            pair_in_orthant(3, {{1, 0, 0}, {0, 1, 1}}), pair_in_orthant(3, {{1, 1, 1}})};
  std::mt19937_64 rng(3);
  for (const auto& pr : pairs) {
    const Eigen::Index m = pr.dim();
    REQUIRE(is_pseudo_saturated(pr).pseudo_saturated);
    CHECK(is_exact(pr.inclusion()).exact);
    for (int t = 0; t < 8; ++t) {
      QVector x(m), x2(m), q(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        x(i) = Rational(static_cast<long>(rng() % 9), static_cast<long>(1 + rng() % 3));
        x2(i) = Rational(static_cast<long>(rng() % 7), 2);
      }
      q = zeros<Rational>(m);
      for (const auto& g : pr.N.generators) q += to_rational(g) * Rational(static_cast<long>(rng() % 3), 2);
      QVector g = g_N(pr, x);
      // unique and matching g_N
      auto d = minimal_decompositions(pr, x);
      REQUIRE(d.unique());
      CHECK(vec_equal(d.points[0].n_part, g));
      CHECK(unique_by_domination(pr, x));
      // homogeneity
      Rational beta(static_cast<long>(1 + rng() % 5), static_cast<long>(1 + rng() % 4));
      CHECK(vec_equal(g_N(pr, QVector(beta * x)), QVector(beta * g)));
      // translation invariance of f_N
      CHECK(vec_equal(f_N(pr, QVector(x + q)), f_N(pr, x)));
      // superadditivity: g(x) + g(x') | g(x + x')
      QVector diff = g_N(pr, QVector(x + x2)) - g - g_N(pr, x2);
      CHECK(pr.coneN.contains(diff));
    }
  }
}

TEST_CASE("verdict agrees with the domination oracle on a grid") {
  std::vector<PairNP> pairs{pair_in_orthant(2, {{1, 2}, {2, 1}}), pair_in_orthant(2, {{1, 3}}),
                            pair_in_orthant(3, {{1, 0, 1}, {0, 1, 1}}), pair_in_orthant(2, {{1, 1}, {1, 2}})};
  for (const auto& pr : pairs) {
    bool ps = is_pseudo_saturated(pr).pseudo_saturated;
    bool all_unique = true;
    const Eigen::Index m = pr.dim();
    IntVector x = zeros<Integer>(m);
    for (;;) {
      Eigen::Index k = 0;
      while (k < m) {
        x(k) += 1;
        if (x(k) <= 3) break;
        x(k) = 0;
        ++k;
      }
      if (k == m) break;
      if (!unique_by_domination(pr, to_rational(x))) all_unique = false;
    }
    CHECK(ps == all_unique);
  }
}
