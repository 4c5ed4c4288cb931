#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lmon/twisted.hpp"

#include <random>

using namespace lmon;

namespace {
std::vector<IntVector> vs(std::initializer_list<std::initializer_list<long>> xs) {
  std::vector<IntVector> out;
  for (auto x : xs) out.push_back(int_vec(x));
  return out;
}

PairNP ray_pair(std::initializer_list<long> img) {
  return PairNP::make(AffineMonoid::orthant(static_cast<Eigen::Index>(img.size())), {int_vec(img)});
}

TwistedElement term(const QVector& q, const Rational& e, const Rational& c = 1) {
  TwistedElement t;
  t.add(q, e, c);
  return t;
}
}  // namespace

TEST_CASE("products of basis elements") {
  TwistedAlgebra A(ray_pair({1, 1}));
  auto p = A.mul(A.basis(q_vec({2, 0})), A.basis(q_vec({0, 2})));
  CHECK(p == term(q_vec({0, 0}), 2));
  CHECK(p.describe() == "v^2 e^(0,0)");
  auto s = A.mul(A.basis(q_vec({1, 0})), A.basis(q_vec({2, 0})));
  CHECK(s == A.basis(q_vec({3, 0})));
  auto a = A.basis(q_vec({Rational(1, 2), 0}));
  a.add(A.basis(q_vec({0, 3})));
  CHECK(A.mul(A.one(), a) == a);
  CHECK(A.mul(a, A.basis(q_vec({1, 0}))) == A.mul(A.basis(q_vec({1, 0})), a));
  CHECK(A.mul(a, TwistedElement{}).is_zero());
  CHECK_THROWS_AS(A.basis(q_vec({1, 1})), std::invalid_argument);
}

TEST_CASE("non-pseudo-saturated pairs are rejected") {
  auto pm = PairNP::make(AffineMonoid::orthant(3), vs({{1, 0, 1}, {0, 1, 1}}));
  CHECK_THROWS_WITH_AS(TwistedAlgebra{pm}, doctest::Contains("(1,1,1)"), std::invalid_argument);
}

TEST_CASE("associativity against the closed form") {
  for (auto pr : {ray_pair({1, 1}), ray_pair({1, 2}), ray_pair({1, 1, 1})}) {
    TwistedAlgebra A(pr);
    auto r = verify_associativity(A, 30, 5, 2);
    CHECK(r.samples == 30);
    CHECK(r.passed());
  }
}

TEST_CASE("characters") {
  auto pr = ray_pair({1, 1});
  CHECK(is_zero(character_of(pr, q_vec({1, 0}), 2)));
  CHECK(is_zero(character_of(pr, q_vec({Rational(1, 2), Rational(1, 2)}), 2)));
  auto c = character_of(pr, q_vec({Rational(1, 2), 0}), 2);
  CHECK_FALSE(is_zero(c));
  CHECK(is_zero(galois_quotient(pr, 2).group.reduce(IntVector(Integer(2) * c))));
  CHECK_THROWS_AS(character_of(pr, q_vec({Rational(1, 3), 0}), 2), std::invalid_argument);

  // the product is graded by characters
  TwistedAlgebra A(ray_pair({1, 2}));
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    QVector a = f_N(A.pair(), q_vec({Rational(static_cast<long>(rng() % 7), 2), Rational(static_cast<long>(rng() % 7), 2)}));
    QVector b = f_N(A.pair(), q_vec({Rational(static_cast<long>(rng() % 7), 2), Rational(static_cast<long>(rng() % 7), 2)}));
    auto prod = A.mul(A.basis(a), A.basis(b));
    REQUIRE(prod.terms.size() == 1);
    const QVector& q = prod.terms.begin()->first;
    auto G = galois_quotient(A.pair(), 4).group;
    CHECK(vec_equal(character_of(A.pair(), q, 4),
                    G.add(character_of(A.pair(), a, 4), character_of(A.pair(), b, 4))));
    CHECK(A.is_basis_point(q));
  }
}

TEST_CASE("character decomposition") {
  TwistedAlgebra I(PairNP::make(AffineMonoid::orthant(2), vs({{1, 0}, {0, 1}})));
  auto d0 = character_decompose(I, 3, 3);
  CHECK(d0.components.size() == 1);
  CHECK(d0.trivial_component_verified);

  TwistedAlgebra A(ray_pair({1, 2}));
  auto d = character_decompose(A, 2, 3);
  CHECK(d.components.size() == 2);
  CHECK(d.trivial_component_verified);
  CHECK(d.translates_verified);

  TwistedAlgebra B(ray_pair({1, 1}));
  for (int n : {2, 3, 4}) {
    auto e = character_decompose(B, n, 3);
    CHECK(e.components.size() == static_cast<std::size_t>(n));
    CHECK(e.trivial_component_verified);
    CHECK(e.translates_verified);
    CHECK_FALSE(e.failure);
  }
}
