#pragma once

// q-integers, log q-derivatives on polynomial rings, Koszul complexes with
// scalar operators per multidegree, and decalage along divisible operators.

#include "lmon/lattice.hpp"

#include <map>
#include <string>
#include <vector>

namespace lmon {

// integer polynomial in q, coefficients from degree 0 upwards, no trailing zeros
struct QPoly {
  std::vector<Integer> c;

  static QPoly constant(const Integer& a);
  static QPoly monomial(const Integer& a, std::size_t deg);
  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  Integer at(std::size_t i) const { return i < c.size() ? c[i] : Integer(0); }
  Integer eval(const Integer& q) const;
  void trim();
  std::string describe() const;  // e.g. "1 + q + q^2"
};
QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
bool operator==(const QPoly& a, const QPoly& b);
// division by a monic polynomial
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& monic);
bool divides(const QPoly& f, const QPoly& a);  // f monic

QPoly cyclotomic_prime(int p);  // 1 + q + ... + q^{p-1}
QPoly mu_poly();                // q - 1

enum class QMode { integral, q_one, zeta_p, p_truncated };

struct QBase {
  QMode mode = QMode::integral;
  int p = 0;  // zeta_p, p_truncated
  int k = 0;  // p_truncated: coefficients mod p^k

  static QBase integral() { return {QMode::integral, 0, 0}; }
  static QBase q_one() { return {QMode::q_one, 0, 0}; }
  static QBase zeta(int p) { return {QMode::zeta_p, p, 0}; }
  static QBase truncated(int p, int k) { return {QMode::p_truncated, p, k}; }

  QPoly reduce(const QPoly& a) const;
  QPoly mul(const QPoly& a, const QPoly& b) const { return reduce(a * b); }
  // rank of the base ring as a Z-module (0 for the integral mode)
  int z_rank() const;
  std::string describe() const;
};

QPoly q_integer(long a, const QBase& base);

// polynomial in X_1..X_d with coefficients in the base
using QLaurent = std::map<IntVector, QPoly, LexLess>;
QLaurent log_q_derivative(std::size_t i, const QLaurent& f, const QBase& base);

// Koszul complex of scalar operators: K^i = wedge^i R^d, d(e_S) = sum f_j e_j ^ e_S
struct KoszulMatrices {
  int d = 0;
  std::vector<std::vector<std::vector<QPoly>>> diff;  // diff[i]: C(d,i+1) x C(d,i)
};
KoszulMatrices koszul_matrices(const std::vector<QPoly>& ops, const QBase& base);
bool squares_to_zero(const KoszulMatrices& K, const QBase& base);

struct DegreeCohomology {
  Integer free_rank = 0;  // over Z
  Integer base_rank = 0;  // over the base ring (free_rank / z_rank)
  std::vector<Integer> torsion;
};
// requires q_one, zeta_p or p_truncated
std::vector<DegreeCohomology> koszul_cohomology(const std::vector<QPoly>& ops, const QBase& base);

struct QComplex {
  int d = 0;
  int degree_bound = 0;
  QBase base;
  std::vector<IntVector> multidegrees;  // total degree <= bound, lex order
  std::vector<std::vector<QPoly>> operators;

  // the log q-de Rham complex: operators [a_i]_q on X^a
  static QComplex log_q_de_rham(int d, int degree_bound, const QBase& base);
  static QComplex trivial(int d, int degree_bound, const QBase& base);
};

struct CohomologyTable {
  std::vector<IntVector> multidegrees;
  std::vector<std::vector<DegreeCohomology>> per_multidegree;
  std::vector<FGAbelianGroup> total;  // per degree, as Z-modules
};
CohomologyTable koszul_cohomology(const QComplex& cx);
// single complex over all multidegrees at once, same Z-module structure expected
std::vector<FGAbelianGroup> whole_complex_cohomology(const QComplex& cx);

// eta_f of a complex whose differentials are all divisible by f: the
// subcomplex f^i K^i with differential d / f
struct EtaComplex {
  std::vector<QPoly> scale;                           // f^i per degree
  std::vector<std::vector<std::vector<QPoly>>> diff;  // differentials after division
};
EtaComplex decalage(const EtaComplex& C, const QPoly& f);
EtaComplex as_eta(const KoszulMatrices& K);

struct DecalageReport {
  int d = 0, degree_bound = 0;
  std::size_t multidegrees = 0;
  bool verified = false;
  std::vector<IntVector> failures;
};
// Kos(q^{a_i} - 1) after eta_mu equals mu^i Kos([a_i]_q) for every a in range
DecalageReport decalage_koszul(int d, int degree_bound);
// eta_mu eta_f = eta_{mu f} on Kos(q^{p a_i} - 1)
bool decalage_composition(int d, int degree_bound, int p);

struct LogAffineReport {
  int d = 0, degree_bound = 0, p = 0;
  bool de_rham_matches = false;        // q = 1 operators are the log derivatives a_i
  bool support_p_divisible = false;    // q = zeta_p cohomology lives on p | a
  bool rank_pattern = false;           // C(d,i) on that support
  bool trivial_operators = false;      // wedge^i of a rank-d module
  std::vector<IntVector> support;
};
LogAffineReport log_affine_space_tables(int d, int degree_bound, int p);

Integer binomial(int n, int k);

}  // namespace lmon
