#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <vector>

namespace lmon {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using IntMatrix = Mat<Integer>;
using IntVector = Vec<Integer>;
using QMatrix = Mat<Rational>;
using QVector = Vec<Rational>;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }
inline Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = b;
    b = r;
  }
  return a;
}
inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

// floor division for any signs
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}
inline Integer mod_floor(const Integer& a, const Integer& m) { return a - floor_div(a, m) * m; }

inline Integer floor(const Rational& q) { return floor_div(numerator(q), denominator(q)); }
inline Integer ceil(const Rational& q) { return -floor_div(-numerator(q), denominator(q)); }

template <typename T>
int sign(const T& x) {
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

template <typename To, typename From>
Vec<To> cast_vec(const Vec<From>& v) {
  Vec<To> r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = To(v(i));
  return r;
}
template <typename To, typename From>
Mat<To> cast_mat(const Mat<From>& m) {
  Mat<To> r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = To(m(i, j));
  return r;
}

inline QVector to_rational(const IntVector& v) { return cast_vec<Rational>(v); }
inline QMatrix to_rational(const IntMatrix& m) { return cast_mat<Rational>(m); }

// lcm of denominators
inline Integer common_denominator(const QVector& v) {
  Integer d = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) d = lcm(d, denominator(v(i)));
  return d;
}

// Scale a rational vector to the primitive integer vector on the same ray.
IntVector primitive(const QVector& v);
IntVector primitive(const IntVector& v);
// Primitive, then flip sign so the first nonzero entry is positive.
IntVector canonical_line(const IntVector& v);

bool is_integral(const QVector& v);
IntVector to_integer(const QVector& v);  // requires integrality

Integer content(const IntVector& v);  // gcd of entries

IntVector int_vec(std::initializer_list<long> xs);
QVector q_vec(std::initializer_list<Rational> xs);
IntMatrix int_mat(std::initializer_list<std::initializer_list<long>> rows);
// columns given as a list
IntMatrix from_columns(const std::vector<IntVector>& cols, Eigen::Index rows);
IntMatrix from_rows(const std::vector<IntVector>& rs, Eigen::Index cols);
std::vector<IntVector> columns_of(const IntMatrix& m);
std::vector<IntVector> rows_of(const IntMatrix& m);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);  // "n" or "n/d"
std::string to_string(const IntVector& v);
std::string to_string(const QVector& v);
Rational parse_rational(const std::string& s);

// lexicographic order on vectors of equal size, usable in std::sort/std::set
struct LexLess {
  template <typename T>
  bool operator()(const Vec<T>& a, const Vec<T>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a(i) < b(i)) return true;
      if (b(i) < a(i)) return false;
    }
    return false;
  }
};

template <typename T>
bool vec_equal(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

template <typename T>
bool is_zero(const Vec<T>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

template <typename T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  T s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}
inline Rational dot(const IntVector& a, const QVector& b) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += Rational(a(i)) * b(i);
  return s;
}

template <typename T>
Vec<T> concat(const Vec<T>& a, const Vec<T>& b) {
  Vec<T> r(a.size() + b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) r(i) = a(i);
  for (Eigen::Index i = 0; i < b.size(); ++i) r(a.size() + i) = b(i);
  return r;
}

template <typename T>
Vec<T> zeros(Eigen::Index n) {
  Vec<T> r(n);
  for (Eigen::Index i = 0; i < n; ++i) r(i) = T(0);
  return r;
}
template <typename T>
Mat<T> zeros(Eigen::Index r, Eigen::Index c) {
  Mat<T> m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = T(0);
  return m;
}
template <typename T>
Mat<T> identity(Eigen::Index n) {
  Mat<T> m = zeros<T>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = T(1);
  return m;
}
template <typename T>
Vec<T> unit(Eigen::Index n, Eigen::Index i) {
  Vec<T> v = zeros<T>(n);
  v(i) = T(1);
  return v;
}

}  // namespace lmon
