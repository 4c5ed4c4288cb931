#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lmon/cone.hpp"

#include <random>

using namespace lmon;

namespace {
std::vector<IntVector> vs(std::initializer_list<std::initializer_list<long>> xs) {
  std::vector<IntVector> out;
  for (auto x : xs) out.push_back(int_vec(x));
  return out;
}
}  // namespace

TEST_CASE("dual descriptions") {
  auto C = dual_description(vs({{1, 0}, {0, 1}}), 2);
  CHECK(C.facet_normals.size() == 2);
  CHECK(C.facet_normals[0] == int_vec({0, 1}));
  CHECK(C.facet_normals[1] == int_vec({1, 0}));
  auto D = dual_description(vs({{1, 2}, {2, 1}}), 2);
  REQUIRE(D.facet_normals.size() == 2);
  CHECK(D.facet_normals[0] == int_vec({-1, 2}));
  CHECK(D.facet_normals[1] == int_vec({2, -1}));
  CHECK(D.cross_validate());
  auto E = dual_description(vs({{1, 0, 0}, {0, 1, 1}}), 3);
  CHECK(E.dim() == 2);
  CHECK(E.is_pointed());
  CHECK(E.cross_validate());
  auto Z = dual_description(std::vector<IntVector>{}, 2);
  CHECK(Z.is_zero());
  auto H = dual_description(vs({{1, 0}, {-1, 0}, {0, 1}}), 2);
  CHECK(H.lineality_dim() == 1);
  CHECK(H.facet_normals.size() == 1);
  CHECK(H.cross_validate());
}

TEST_CASE("inequality round trip") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 40; ++t) {
    std::vector<IntVector> g;
    for (int k = 0; k < 4; ++k) g.push_back(int_vec({d(rng), d(rng), d(rng)}));
    auto C = dual_description(g, 3);
    CHECK(C.cross_validate());
    auto C2 = cone_from_inequalities(C.facet_normals, C.equations, 3);
    CHECK(C.same_set(C2));
    for (const auto& x : g) CHECK(C.contains(x));
  }
}

TEST_CASE("face lattices") {
  CHECK(face_lattice(dual_description(vs({{1, 0}, {0, 1}}), 2)).size() == 4);
  CHECK(face_lattice(dual_description(vs({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 3)).size() == 8);
  auto C = dual_description(vs({{1, 2}, {2, 1}}), 2);
  auto F = face_lattice(C);
  REQUIRE(F.size() == 4);
  CHECK(F[0].dim == 0);
  CHECK(F[1].dim == 1);
  CHECK(F[3].dim == 2);
  auto sq = dual_description(vs({{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}}), 3);
  CHECK(face_lattice(sq).size() == 10);
}

TEST_CASE("tangent cones") {
  auto C = dual_description(vs({{1, 0}, {0, 1}}), 2);
  auto faces = face_lattice(C);
  auto top = faces.back();
  CHECK(tangent_cone(C, top).is_full_dimensional());
  CHECK(tangent_cone(C, top).facet_normals.empty());
  CHECK(tangent_cone(C, faces.front()).same_set(C));
  auto ray = face_of_point(C, q_vec({1, 0}));
  auto T = tangent_cone(C, ray);
  REQUIRE(T.facet_normals.size() == 1);
  CHECK(T.facet_normals[0] == int_vec({0, 1}));
  // monotone in the face
  for (const auto& f : faces)
    for (const auto& g : faces) {
      bool sub = std::includes(f.tight_facets.begin(), f.tight_facets.end(), g.tight_facets.begin(),
                               g.tight_facets.end());
      if (!sub) continue;  // g contains f
      auto Tf = tangent_cone(C, f), Tg = tangent_cone(C, g);
      for (const auto& r : Tf.all_generators()) CHECK(Tg.contains(r));
    }
  Face bogus;
  bogus.tight_facets = {5};
  CHECK_THROWS(tangent_cone(C, bogus));
}

TEST_CASE("strict feasibility") {
  RationalPolyhedron P(1);
  P.ge(int_vec({1})).gt(int_vec({1}));
  auto w = lp_feasible_strict(P);
  REQUIRE(w);
  CHECK((*w)(0) > 0);
  RationalPolyhedron Q(2);
  Q.eq(int_vec({1, 1})).ge(int_vec({1, 0})).ge(int_vec({0, 1})).gt(int_vec({1, 0}));
  auto r = lp_feasible_strict_certified(Q);
  CHECK_FALSE(r.witness);
  auto S = strict_standard_form(Q);
  CHECK(check_farkas(S.A, S.b, r.farkas));
}

TEST_CASE("strict feasibility agrees with grid search") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int t = 0; t < 60; ++t) {
    RationalPolyhedron P(2);
    for (int k = 0; k < 3; ++k) {
      IntVector a = int_vec({d(rng), d(rng)});
      Rational b(d(rng), 1 + (t + k) % 3);
      if (k == 2) P.gt(a, b);
      else P.ge(a, b);
    }
    auto w = lp_feasible_strict(P);
    bool grid = false;
    for (int i = -48; i <= 48 && !grid; ++i)
      for (int j = -48; j <= 48 && !grid; ++j)
        if (P.satisfied_by(q_vec({Rational(i, 8), Rational(j, 8)}))) grid = true;
    if (grid) CHECK(w);
    if (w) CHECK(P.satisfied_by(*w));
  }
}

TEST_CASE("polytope vertices") {
  // Y' = {q in N : x - q in P}, x = (3,1), P = first quadrant
  auto Yp = [](const RationalCone& N) {
    RationalPolyhedron P(2);
    add_cone_constraints(P, N, 0);
    P.ge(int_vec({-1, 0}), -3).ge(int_vec({0, -1}), -1);
    return polytope_vertices(P);
  };
  auto v1 = Yp(dual_description(vs({{1, 1}}), 2));
  REQUIRE(v1.size() == 2);
  CHECK(v1[0] == q_vec({0, 0}));
  CHECK(v1[1] == q_vec({1, 1}));
  auto v2 = Yp(dual_description(vs({{1, 2}, {2, 1}}), 2));
  REQUIRE(v2.size() == 3);
  CHECK(v2[0] == q_vec({0, 0}));
  CHECK(v2[1] == q_vec({Rational(1, 2), 1}));
  CHECK(v2[2] == q_vec({2, 1}));
  RationalPolyhedron sq(2);
  sq.ge(int_vec({1, 0})).ge(int_vec({0, 1})).ge(int_vec({-1, 0}), -1).ge(int_vec({0, -1}), -1);
  CHECK(polytope_vertices(sq).size() == 4);
  RationalPolyhedron half(2);
  half.ge(int_vec({1, 0}));
  CHECK_THROWS(polytope_vertices(half));
}

TEST_CASE("trivial intersections") {
  auto q1 = dual_description(vs({{1, 0}, {0, 1}}), 2);
  auto q3 = dual_description(vs({{-1, 0}, {0, -1}}), 2);
  CHECK(is_trivial_intersection(q1, q3));
  CHECK(is_trivial_intersection(q1, dual_description(vs({{-1, 1}, {-1, 2}}), 2)));
  CHECK_FALSE(is_trivial_intersection(q1, q1));
}
