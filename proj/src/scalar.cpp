#include "lmon/scalar.hpp"

#include <stdexcept>

namespace lmon {

Integer content(const IntVector& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  return g;
}

IntVector primitive(const IntVector& v) {
  Integer g = content(v);
  if (g == 0) return v;
  IntVector r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = v(i) / g;
  return r;
}

IntVector primitive(const QVector& v) {
  Integer d = common_denominator(v);
  IntVector r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = numerator(v(i) * Rational(d));
  return primitive(r);
}

IntVector canonical_line(const IntVector& v) {
  IntVector r = primitive(v);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r(i) != 0) {
      if (r(i) < 0) r = -r;
      break;
    }
  }
  return r;
}

bool is_integral(const QVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (denominator(v(i)) != 1) return false;
  return true;
}

IntVector to_integer(const QVector& v) {
  IntVector r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (denominator(v(i)) != 1) throw std::logic_error("to_integer: non-integral entry");
    r(i) = numerator(v(i));
  }
  return r;
}

IntVector int_vec(std::initializer_list<long> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

QVector q_vec(std::initializer_list<Rational> xs) {
  QVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

IntMatrix int_mat(std::initializer_list<std::initializer_list<long>> rows) {
  Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  Eigen::Index c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  IntMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

IntMatrix from_columns(const std::vector<IntVector>& cols, Eigen::Index rows) {
  IntMatrix m(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("from_columns: size mismatch");
    for (Eigen::Index i = 0; i < rows; ++i) m(i, static_cast<Eigen::Index>(j)) = cols[j](i);
  }
  return m;
}

IntMatrix from_rows(const std::vector<IntVector>& rs, Eigen::Index cols) {
  IntMatrix m(static_cast<Eigen::Index>(rs.size()), cols);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].size() != cols) throw std::invalid_argument("from_rows: size mismatch");
    for (Eigen::Index j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), j) = rs[i](j);
  }
  return m;
}

std::vector<IntVector> columns_of(const IntMatrix& m) {
  std::vector<IntVector> out;
  for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m.col(j));
  return out;
}

std::vector<IntVector> rows_of(const IntMatrix& m) {
  std::vector<IntVector> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(m.row(i).transpose());
  return out;
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v(i));
  }
  return s + ")";
}

std::string to_string(const QVector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v(i));
  }
  return s + ")";
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  auto parse_int = [](const std::string& t) {
    if (t.empty()) throw std::invalid_argument("empty number");
    std::size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (k == t.size()) throw std::invalid_argument("bad number: " + t);
    for (std::size_t i = k; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("bad number: " + t);
    return Integer(t[0] == '+' ? t.substr(1) : t);
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  Integer n = parse_int(s.substr(0, slash));
  Integer d = parse_int(s.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  return Rational(n, d);
}

}  // namespace lmon
