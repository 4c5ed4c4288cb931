#include "lmon/twisted.hpp"

#include "lmon/linalg.hpp"

#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lmon {

void TwistedElement::add(const QVector& q, const Rational& exponent, const Rational& coef) {
  if (coef == 0) return;
  if (exponent < 0) throw std::invalid_argument("TwistedElement: negative valuation exponent");
  ValCoeff& c = terms[q];
  Rational& v = c[exponent];
  v += coef;
  if (v == 0) c.erase(exponent);
  if (c.empty()) terms.erase(q);
}

void TwistedElement::add(const TwistedElement& o) {
  for (const auto& [q, c] : o.terms)
    for (const auto& [e, k] : c) add(q, e, k);
}

bool TwistedElement::operator==(const TwistedElement& o) const {
  if (terms.size() != o.terms.size()) return false;
  auto a = terms.begin();
  auto b = o.terms.begin();
  for (; a != terms.end(); ++a, ++b)
    if (!vec_equal(a->first, b->first) || a->second != b->second) return false;
  return true;
}

std::string TwistedElement::describe() const {
  if (terms.empty()) return "0";
  std::ostringstream s;
  bool first = true;
  for (const auto& [q, c] : terms)
    for (const auto& [e, k] : c) {
      if (!first) s << " + ";
      first = false;
      if (k != 1) s << to_string(k) << " ";
      if (e != 0) s << "v^" << to_string(e) << " ";
      s << "e^" << to_string(q);
    }
  return s.str();
}

TwistedAlgebra::TwistedAlgebra(PairNP pair) : pair_(std::move(pair)) {
  DecompositionCertificate c = is_pseudo_saturated(pair_);
  if (!c.pseudo_saturated) {
    std::string w = c.witness ? to_string(c.witness->x) : "?";
    throw std::invalid_argument("TwistedAlgebra: pair is not pseudo-saturated; non-unique decomposition at " + w);
  }
}

bool TwistedAlgebra::is_basis_point(const QVector& q) const {
  return pair_.coneP.contains(q) && is_zero(g_N(pair_, q));
}

TwistedElement TwistedAlgebra::basis(const QVector& q) const {
  if (!is_basis_point(q)) throw std::invalid_argument("TwistedAlgebra: point is not in the minimal set");
  TwistedElement e;
  e.add(q, 0, 1);
  return e;
}

TwistedElement TwistedAlgebra::one() const { return basis(zeros<Rational>(pair_.dim())); }

TwistedElement TwistedAlgebra::closed_form(const QVector& x) const {
  QVector g = g_N(pair_, x);
  TwistedElement e;
  e.add(QVector(x - g), alpha_exponent(pair_, g), 1);
  return e;
}

TwistedElement TwistedAlgebra::mul(const TwistedElement& a, const TwistedElement& b) const {
  TwistedElement out;
  for (const auto& [q1, c1] : a.terms)
    for (const auto& [q2, c2] : b.terms) {
      QVector x = q1 + q2;
      QVector g = g_N(pair_, x);
      QVector f = x - g;
      Rational al = alpha_exponent(pair_, g);
      for (const auto& [e1, k1] : c1)
        for (const auto& [e2, k2] : c2) out.add(f, e1 + e2 + al, k1 * k2);
    }
  return out;
}

namespace {

QVector random_basis_point(const TwistedAlgebra& A, std::mt19937_64& rng, int level) {
  const PairNP& pr = A.pair();
  QVector x = zeros<Rational>(pr.dim());
  for (const auto& g : pr.P.generators)
    x += to_rational(g) * Rational(static_cast<long>(rng() % static_cast<std::uint64_t>(2 * level + 1)), level);
  return f_N(pr, x);
}

}  // namespace

AssociativityReport verify_associativity(const TwistedAlgebra& A, int samples, std::uint64_t seed, int level) {
  AssociativityReport r;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    QVector a = random_basis_point(A, rng, level), b = random_basis_point(A, rng, level),
            c = random_basis_point(A, rng, level);
    TwistedElement ea = A.basis(a), eb = A.basis(b), ec = A.basis(c);
    TwistedElement left = A.mul(A.mul(ea, eb), ec);
    TwistedElement right = A.mul(ea, A.mul(eb, ec));
    TwistedElement closed = A.closed_form(QVector(a + b + c));
    ++r.samples;
    if (!(left == right) || !(left == closed)) r.counterexamples.push_back({a, b, c});
  }
  return r;
}

IntVector character_of(const PairNP& pair, const QVector& q, const Integer& n) {
  GaloisQuotient G = galois_quotient(pair, n);
  const IntMatrix& B = pair.p_basis;
  const Eigen::Index r = B.cols();
  auto cq = solve(to_rational(B), q);
  if (!cq) throw std::invalid_argument("character_of: point outside span P");
  QVector nc = Rational(n) * *cq;
  if (is_integral(nc)) return G.group.project(to_integer(nc));
  // shift by span N: needs N^gp saturated in P^gp for a well-defined class
  std::vector<IntVector> ncols;
  for (const auto& g : pair.N.generators) ncols.push_back(*solve_integer(B, g));
  if (ncols.empty()) throw std::invalid_argument("character_of: denominator does not divide the level");
  IntMatrix C = from_columns(ncols, r);
  SmithForm s = smith_normal_form(C);
  for (const auto& d : s.diagonal())
    if (d != 1) throw std::invalid_argument("character_of: N^gp is not saturated in P^gp");
  QVector z = to_rational(s.U) * nc;
  for (Eigen::Index i = 0; i < s.rank; ++i) z(i) = 0;
  if (!is_integral(z)) throw std::invalid_argument("character_of: denominator does not divide the level");
  return G.group.project(IntVector(s.Uinv * to_integer(z)));
}

std::size_t CharacterDecomposition::support_size() const {
  std::size_t k = 0;
  for (const auto& c : components) k += c.support.size();
  return k;
}

CharacterDecomposition character_decompose(const TwistedAlgebra& A, const Integer& n, int height) {
  const PairNP& pr = A.pair();
  const Eigen::Index m = pr.dim();
  GaloisQuotient G = galois_quotient(pr, n);
  CharacterDecomposition D;
  D.level = n;
  D.height = height;
  D.group = G.group;
  IntVector w = pr.coneP.positive_functional();
  const auto& gens = pr.P.generators;
  MemberSolver Ps(pr.P);

  // lattice points of P of height <= budget
  auto points = [&](const Integer& budget) {
    std::set<IntVector, LexLess> out;
    std::function<void(std::size_t, const IntVector&, const Integer&)> rec = [&](std::size_t i, const IntVector& cur,
                                                                                  const Integer& left) {
      if (i == gens.size()) {
        out.insert(cur);
        return;
      }
      IntVector c = cur;
      Integer l = left;
      Integer h = dot(w, gens[i]);
      while (l >= 0) {
        rec(i + 1, c, l);
        c += gens[i];
        l -= h;
      }
    };
    rec(0, zeros<Integer>(m), budget);
    return std::vector<IntVector>(out.begin(), out.end());
  };
  auto char_of_scaled = [&](const IntVector& y) { return G.character(y); };  // y = n x
  auto as_x = [&](const IntVector& y) { return QVector(to_rational(y) / Rational(n)); };

  std::map<IntVector, std::size_t, LexLess> index;
  std::map<QVector, IntVector, LexLess> rep;  // support point -> some y = n x
  for (const auto& y : points(Integer(n) * height)) {
    QVector q = f_N(pr, as_x(y));
    if (rep.count(q)) continue;
    rep[q] = y;
    IntVector chi = char_of_scaled(y);
    auto it = index.find(chi);
    if (it == index.end()) {
      it = index.emplace(chi, D.components.size()).first;
      D.components.push_back({chi, {}, {}});
    }
    D.components[it->second].support.push_back(q);
  }

  // S_chi from 0 <= a_i < n
  const std::size_t k = gens.size();
  std::vector<long> a(k, 0);
  const long nl = n.convert_to<long>();
  std::map<IntVector, std::set<QVector, LexLess>, LexLess> s_chi;
  for (;;) {
    IntVector y = zeros<Integer>(m);
    for (std::size_t i = 0; i < k; ++i) y += Integer(a[i]) * gens[i];
    s_chi[char_of_scaled(y)].insert(f_N(pr, as_x(y)));
    std::size_t i = 0;
    while (i < k && ++a[i] == nl) a[i++] = 0;
    if (i == k) break;
  }
  for (auto& c : D.components) {
    const auto& s = s_chi[c.character];
    c.s_chi.assign(s.begin(), s.end());
  }

  auto fail = [&](const QVector& q) {
    if (!D.failure) D.failure = q;
  };

  // trivial component = {f_N(p) : p in P}, both inclusions inside the window
  bool triv = true;
  for (const auto& p : points(Integer(height))) {
    QVector q = f_N(pr, to_rational(p));
    auto it = rep.find(q);
    if (it == rep.end() || !is_zero(char_of_scaled(it->second))) {
      triv = false;
      fail(q);
    }
  }
  IntVector s = zeros<Integer>(m);
  for (const auto& g : pr.N.generators) s += g;
  const Eigen::Index r = pr.p_basis.cols();
  IntMatrix sys(m, r + pr.n_basis.cols());
  sys.leftCols(r) = Integer(n) * pr.p_basis;
  sys.rightCols(pr.n_basis.cols()) = pr.n_basis;
  for (const auto& [q, y] : rep) {
    if (!is_zero(char_of_scaled(y))) continue;
    // n x = n p0 + r', so p = p0 + c s equals x + (c s - r'/n)
    auto z = solve_integer(sys, y);
    if (!z) {
      triv = false;
      fail(q);
      continue;
    }
    IntVector p0 = pr.p_basis * z->head(r);
    QVector rr = to_rational(IntVector(pr.n_basis * z->tail(pr.n_basis.cols()))) / Rational(n);
    bool found = false;
    for (long c = 0; c <= 64 && !found; ++c) {
      QVector t = to_rational(IntVector(Integer(c) * s)) - rr;
      IntVector p = p0 + Integer(c) * s;
      if (!pr.coneN.contains(t) || !Ps.contains(p)) continue;
      found = vec_equal(f_N(pr, to_rational(p)), q);
    }
    if (!found) {
      triv = false;
      fail(q);
    }
  }
  D.trivial_component_verified = triv;

  // every support point is f_N(f_N(s) + f_N(p)) with s in S_chi and p in P
  bool cover = true;
  for (const auto& [q, y] : rep) {
    auto c = Ps.solve(y);
    if (!c) {
      cover = false;
      fail(q);
      continue;
    }
    IntVector ys = zeros<Integer>(m), yp = zeros<Integer>(m);
    for (std::size_t i = 0; i < k; ++i) {
      Integer ci = (*c)(static_cast<Eigen::Index>(i));
      Integer ai = mod_floor(ci, n);
      ys += ai * gens[i];
      yp += ((ci - ai) / n) * gens[i];
    }
    IntVector chi = char_of_scaled(y);
    QVector fs = f_N(pr, as_x(ys));
    const auto& S = s_chi[chi];
    bool ok = vec_equal(char_of_scaled(ys), chi) && S.count(fs) > 0;
    ok = ok && vec_equal(f_N(pr, QVector(fs + f_N(pr, to_rational(yp)))), q);
    if (!ok) {
      cover = false;
      fail(q);
    }
  }
  D.translates_verified = cover;
  return D;
}

}  // namespace lmon
