#pragma once

// The twisted monoid algebra on the minimal set of a pseudo-saturated pair:
// e^q * e^q' = v^{alpha(g_N(q + q'))} e^{f_N(q + q')}, with valuations kept
// symbolic, and its decomposition by characters at a finite level.

#include "lmon/pushout.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lmon {

// sum of coef * v^exponent, exponents >= 0, zero terms pruned
using ValCoeff = std::map<Rational, Rational>;

struct TwistedElement {
  std::map<QVector, ValCoeff, LexLess> terms;

  void add(const QVector& q, const Rational& exponent, const Rational& coef);
  void add(const TwistedElement& o);
  bool is_zero() const { return terms.empty(); }
  bool operator==(const TwistedElement& o) const;
  std::string describe() const;  // e.g. "v^2 e^(0,0)"
};

class TwistedAlgebra {
 public:
  // throws if the pair is not pseudo-saturated (the message carries the witness)
  explicit TwistedAlgebra(PairNP pair);

  const PairNP& pair() const { return pair_; }
  bool is_basis_point(const QVector& q) const;  // f_N(q) = q
  TwistedElement basis(const QVector& q) const;
  TwistedElement one() const;
  TwistedElement mul(const TwistedElement& a, const TwistedElement& b) const;
  // v^{alpha(g_N(x))} e^{f_N(x)}
  TwistedElement closed_form(const QVector& x) const;

 private:
  PairNP pair_;
};

struct AssociativityReport {
  int samples = 0;
  std::vector<std::vector<QVector>> counterexamples;
  bool passed() const { return counterexamples.empty(); }
};
// random triples of basis points f_N(x), x in (1/level)P
AssociativityReport verify_associativity(const TwistedAlgebra& A, int samples, std::uint64_t seed, int level);

// class in (P^gp / N^gp) (x) Z/n of a point q with n q in P^gp + span N
IntVector character_of(const PairNP& pair, const QVector& q, const Integer& n);

struct CharacterComponent {
  IntVector character;
  std::vector<QVector> support;  // basis points f_N(x), x in (1/n)P within the window
  std::vector<QVector> s_chi;    // f_N(sum a_i x_i / n), 0 <= a_i < n, of this character
};
struct CharacterDecomposition {
  Integer level = 1;
  int height = 0;
  FGAbelianGroup group;
  std::vector<CharacterComponent> components;
  bool trivial_component_verified = false;
  bool translates_verified = false;
  std::optional<QVector> failure;
  std::size_t support_size() const;
};
// window: x = y / n with y in P of height at most n * height
CharacterDecomposition character_decompose(const TwistedAlgebra& A, const Integer& n, int height);

}  // namespace lmon
