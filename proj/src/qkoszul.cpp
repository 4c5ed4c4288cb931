#include "lmon/qkoszul.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lmon {

QPoly QPoly::constant(const Integer& a) { return monomial(a, 0); }

QPoly QPoly::monomial(const Integer& a, std::size_t deg) {
  QPoly f;
  if (a == 0) return f;
  f.c.assign(deg + 1, Integer(0));
  f.c[deg] = a;
  return f;
}

Integer QPoly::eval(const Integer& q) const {
  Integer v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * q + *it;
  return v;
}

void QPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::string QPoly::describe() const {
  if (c.empty()) return "0";
  std::ostringstream s;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Integer a = c[i];
    if (!first) s << (a < 0 ? " - " : " + ");
    else if (a < 0) s << "-";
    first = false;
    Integer m = abs(a);
    if (i == 0) {
      s << to_string(m);
      continue;
    }
    if (m != 1) s << to_string(m) << " ";
    s << "q";
    if (i > 1) s << "^" << i;
  }
  return s.str();
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  QPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), Integer(0));
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.at(i) + b.at(i);
  r.trim();
  return r;
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  QPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), Integer(0));
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.at(i) - b.at(i);
  r.trim();
  return r;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

bool operator==(const QPoly& a, const QPoly& b) { return a.c == b.c; }

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& monic) {
  if (monic.is_zero() || monic.c.back() != 1) throw std::invalid_argument("divmod: divisor must be monic");
  QPoly r = a, q;
  const std::size_t dm = monic.c.size() - 1;
  if (r.c.size() > dm) q.c.assign(r.c.size() - dm, Integer(0));
  while (!r.is_zero() && r.c.size() > dm) {
    std::size_t shift = r.c.size() - 1 - dm;
    Integer lead = r.c.back();
    q.c[shift] = lead;
    for (std::size_t i = 0; i <= dm; ++i) r.c[shift + i] -= lead * monic.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

bool divides(const QPoly& f, const QPoly& a) { return divmod(a, f).second.is_zero(); }

QPoly cyclotomic_prime(int p) {
  QPoly f;
  f.c.assign(static_cast<std::size_t>(p), Integer(1));
  return f;
}

QPoly mu_poly() { return QPoly{{Integer(-1), Integer(1)}}; }

QPoly QBase::reduce(const QPoly& a) const {
  switch (mode) {
    case QMode::integral: {
      QPoly r = a;
      r.trim();
      return r;
    }
    case QMode::q_one:
      return QPoly::constant(a.eval(1));
    case QMode::zeta_p:
      return divmod(a, cyclotomic_prime(p)).second;
    case QMode::p_truncated: {
      QPoly r = divmod(a, cyclotomic_prime(p)).second;
      Integer m = pow(Integer(p), static_cast<unsigned>(k));
      for (auto& x : r.c) x = mod_floor(x, m);
      r.trim();
      return r;
    }
  }
  return a;
}

int QBase::z_rank() const {
  switch (mode) {
    case QMode::integral:
      return 0;
    case QMode::q_one:
      return 1;
    default:
      return p - 1;
  }
}

std::string QBase::describe() const {
  switch (mode) {
    case QMode::integral:
      return "Z[q]";
    case QMode::q_one:
      return "Z";
    case QMode::zeta_p:
      return "Z[zeta_" + std::to_string(p) + "]";
    case QMode::p_truncated:
      return "Z[zeta_" + std::to_string(p) + "]/" + std::to_string(p) + "^" + std::to_string(k);
  }
  return "?";
}

QPoly q_integer(long a, const QBase& base) {
  // [a]_q = 1 + q + ... + q^{a-1}
  if (a < 0) throw std::invalid_argument("q_integer: negative argument");
  QPoly f;
  f.c.assign(static_cast<std::size_t>(a), Integer(1));
  return base.reduce(f);
}

QLaurent log_q_derivative(std::size_t i, const QLaurent& f, const QBase& base) {
  QLaurent out;
  for (const auto& [a, coef] : f) {
    if (a(static_cast<Eigen::Index>(i)) < 0) throw std::invalid_argument("log_q_derivative: negative exponent");
    long ai = a(static_cast<Eigen::Index>(i)).convert_to<long>();
    QPoly v = base.mul(coef, q_integer(ai, base));
    if (!v.is_zero()) out[a] = v;
  }
  return out;
}

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

// subsets of {0..d-1} of size i as bitmasks, in lex order of sorted elements
std::vector<unsigned> subsets(int d, int i) {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < (1u << d); ++m)
    if (__builtin_popcount(m) == i) out.push_back(m);
  auto key = [d](unsigned m) {
    std::vector<int> v;
    for (int j = 0; j < d; ++j)
      if (m >> j & 1u) v.push_back(j);
    return v;
  };
  std::sort(out.begin(), out.end(), [&](unsigned a, unsigned b) { return key(a) < key(b); });
  return out;
}

using PolyMatrix = std::vector<std::vector<QPoly>>;

// restriction of scalars: a matrix over the base as an integer matrix
IntMatrix expand(const PolyMatrix& M, std::size_t cols, const QBase& base) {
  const int r = base.z_rank();
  const std::size_t rows = M.size();
  IntMatrix out = IntMatrix::Zero(static_cast<Eigen::Index>(rows * r), static_cast<Eigen::Index>(cols * r));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (int b = 0; b < r; ++b) {
        QPoly img = base.mul(M[i][j], QPoly::monomial(1, static_cast<std::size_t>(b)));
        for (int a = 0; a < r; ++a)
          out(static_cast<Eigen::Index>(i * r + a), static_cast<Eigen::Index>(j * r + b)) = img.at(static_cast<std::size_t>(a));
      }
  return out;
}

// H = ker(out) / im(in) on Z^n; modulus > 0 works in (Z/modulus)^n
FGAbelianGroup homology(const IntMatrix& in, const IntMatrix& out, Eigen::Index n, const Integer& modulus) {
  if (n == 0) return FGAbelianGroup::free(0);
  IntMatrix Kb;
  if (modulus > 0) {
    const Eigen::Index c = out.rows();
    IntMatrix sys(c, n + c);
    sys.leftCols(n) = out;
    sys.rightCols(c) = modulus * IntMatrix::Identity(c, c);
    IntMatrix K = c == 0 ? IntMatrix(IntMatrix::Identity(n, n)) : IntMatrix(integer_kernel(sys).topRows(n));
    Kb = lattice_basis(K);
  } else if (out.rows() == 0) {
    Kb = IntMatrix::Identity(n, n);
  } else {
    Kb = integer_kernel(out);
  }
  const Eigen::Index a = Kb.cols();
  if (a == 0) return FGAbelianGroup::free(0);
  std::vector<IntVector> gens;
  for (Eigen::Index j = 0; j < in.cols(); ++j) gens.push_back(in.col(j));
  if (modulus > 0)
    for (Eigen::Index j = 0; j < n; ++j) gens.push_back(IntVector(modulus * unit<Integer>(n, j)));
  if (gens.empty()) return FGAbelianGroup::free(a);
  IntMatrix C(a, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    auto z = solve_integer(Kb, gens[j]);
    if (!z) throw std::logic_error("homology: image not inside kernel");
    C.col(static_cast<Eigen::Index>(j)) = *z;
  }
  return cokernel(C);
}

Integer modulus_of(const QBase& base) {
  return base.mode == QMode::p_truncated ? Integer(pow(Integer(base.p), static_cast<unsigned>(base.k))) : Integer(0);
}

DegreeCohomology to_degree(const FGAbelianGroup& G, const QBase& base) {
  DegreeCohomology h;
  h.free_rank = G.free_rank;
  h.base_rank = Integer(G.free_rank) / base.z_rank();
  h.torsion = G.invariant_factors;
  if (base.mode == QMode::p_truncated) {
    // over Z/p^k everything is torsion; count copies of the full module instead
    Integer m = modulus_of(base);
    Integer full = 0;
    for (const auto& t : h.torsion)
      if (t == m) ++full;
    h.base_rank = full / base.z_rank();
  }
  return h;
}

std::vector<std::pair<std::size_t, std::size_t>> dims_of(int d) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (int i = 0; i < d; ++i)
    out.push_back({binomial(d, i + 1).convert_to<std::size_t>(), binomial(d, i).convert_to<std::size_t>()});
  return out;
}

void check_base(const QBase& base) {
  if (base.mode == QMode::integral) throw std::invalid_argument("koszul_cohomology: integral base has infinite Z-rank");
}

}  // namespace

KoszulMatrices koszul_matrices(const std::vector<QPoly>& ops, const QBase& base) {
  KoszulMatrices K;
  K.d = static_cast<int>(ops.size());
  const int d = K.d;
  for (int i = 0; i < d; ++i) {
    auto src = subsets(d, i), dst = subsets(d, i + 1);
    PolyMatrix M(dst.size(), std::vector<QPoly>(src.size()));
    for (std::size_t s = 0; s < src.size(); ++s)
      for (int j = 0; j < d; ++j) {
        if (src[s] >> j & 1u) continue;
        int below = __builtin_popcount(src[s] & ((1u << j) - 1u));
        std::size_t t = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), src[s] | (1u << j)) - dst.begin());
        QPoly f = base.reduce(ops[static_cast<std::size_t>(j)]);
        M[t][s] = below % 2 ? QPoly{} - f : f;
      }
    K.diff.push_back(std::move(M));
  }
  return K;
}

bool squares_to_zero(const KoszulMatrices& K, const QBase& base) {
  for (std::size_t i = 0; i + 1 < K.diff.size(); ++i) {
    const auto& A = K.diff[i];
    const auto& B = K.diff[i + 1];
    for (std::size_t r = 0; r < B.size(); ++r)
      for (std::size_t c = 0; c < A[0].size(); ++c) {
        QPoly s;
        for (std::size_t m = 0; m < A.size(); ++m) s = s + B[r][m] * A[m][c];
        if (!base.reduce(s).is_zero()) return false;
      }
  }
  return true;
}

std::vector<DegreeCohomology> koszul_cohomology(const std::vector<QPoly>& ops, const QBase& base) {
  check_base(base);
  const int d = static_cast<int>(ops.size());
  const Integer mod = modulus_of(base);
  KoszulMatrices K = koszul_matrices(ops, base);
  auto dims = dims_of(d);
  const Eigen::Index r = base.z_rank();
  std::vector<IntMatrix> D;
  for (int i = 0; i < d; ++i) D.push_back(expand(K.diff[static_cast<std::size_t>(i)], dims[static_cast<std::size_t>(i)].second, base));
  std::vector<DegreeCohomology> out;
  for (int i = 0; i <= d; ++i) {
    const Eigen::Index n = binomial(d, i).convert_to<Eigen::Index>() * r;
    IntMatrix in = i == 0 ? IntMatrix(n, 0) : D[static_cast<std::size_t>(i - 1)];
    IntMatrix outm = i == d ? IntMatrix(0, n) : D[static_cast<std::size_t>(i)];
    out.push_back(to_degree(homology(in, outm, n, mod), base));
  }
  return out;
}

namespace {
void multidegrees_rec(int d, int left, IntVector& cur, int pos, std::vector<IntVector>& out) {
  if (pos == d) {
    out.push_back(cur);
    return;
  }
  for (int a = 0; a <= left; ++a) {
    cur(pos) = a;
    multidegrees_rec(d, left - a, cur, pos + 1, out);
  }
}

std::vector<IntVector> all_multidegrees(int d, int bound) {
  std::vector<IntVector> out;
  IntVector cur = zeros<Integer>(d);
  multidegrees_rec(d, bound, cur, 0, out);
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}
}  // namespace

QComplex QComplex::log_q_de_rham(int d, int degree_bound, const QBase& base) {
  QComplex cx{d, degree_bound, base, all_multidegrees(d, degree_bound), {}};
  for (const auto& a : cx.multidegrees) {
    std::vector<QPoly> ops;
    for (int i = 0; i < d; ++i) ops.push_back(q_integer(a(i).convert_to<long>(), base));
    cx.operators.push_back(ops);
  }
  return cx;
}

QComplex QComplex::trivial(int d, int degree_bound, const QBase& base) {
  QComplex cx{d, degree_bound, base, all_multidegrees(d, degree_bound), {}};
  cx.operators.assign(cx.multidegrees.size(), std::vector<QPoly>(static_cast<std::size_t>(d)));
  return cx;
}

CohomologyTable koszul_cohomology(const QComplex& cx) {
  CohomologyTable T;
  T.multidegrees = cx.multidegrees;
  std::vector<Eigen::Index> free(static_cast<std::size_t>(cx.d + 1), 0);
  std::vector<std::vector<Integer>> tors(static_cast<std::size_t>(cx.d + 1));
  for (const auto& ops : cx.operators) {
    auto h = koszul_cohomology(ops, cx.base);
    for (std::size_t i = 0; i < h.size(); ++i) {
      free[i] += h[i].free_rank.convert_to<Eigen::Index>();
      tors[i].insert(tors[i].end(), h[i].torsion.begin(), h[i].torsion.end());
    }
    T.per_multidegree.push_back(std::move(h));
  }
  for (std::size_t i = 0; i < free.size(); ++i) {
    // normalize the direct sum to invariant factors
    const Eigen::Index t = static_cast<Eigen::Index>(tors[i].size());
    IntMatrix rel = IntMatrix::Zero(free[i] + t, t);
    for (Eigen::Index j = 0; j < t; ++j) rel(free[i] + j, j) = tors[i][static_cast<std::size_t>(j)];
    T.total.push_back(t == 0 ? FGAbelianGroup::free(free[i]) : cokernel(rel));
  }
  return T;
}

std::vector<FGAbelianGroup> whole_complex_cohomology(const QComplex& cx) {
  check_base(cx.base);
  const int d = cx.d;
  const Eigen::Index r = cx.base.z_rank();
  const Eigen::Index M = static_cast<Eigen::Index>(cx.multidegrees.size());
  auto dims = dims_of(d);
  std::vector<IntMatrix> D;
  for (int i = 0; i < d; ++i) {
    const auto [rows, cols] = dims[static_cast<std::size_t>(i)];
    const Eigen::Index R = static_cast<Eigen::Index>(rows) * r, C = static_cast<Eigen::Index>(cols) * r;
    IntMatrix big = IntMatrix::Zero(R * M, C * M);
    for (Eigen::Index k = 0; k < M; ++k) {
      KoszulMatrices K = koszul_matrices(cx.operators[static_cast<std::size_t>(k)], cx.base);
      big.block(k * R, k * C, R, C) = expand(K.diff[static_cast<std::size_t>(i)], cols, cx.base);
    }
    D.push_back(big);
  }
  std::vector<FGAbelianGroup> out;
  for (int i = 0; i <= d; ++i) {
    const Eigen::Index n = binomial(d, i).convert_to<Eigen::Index>() * r * M;
    IntMatrix in = i == 0 ? IntMatrix(n, 0) : D[static_cast<std::size_t>(i - 1)];
    IntMatrix outm = i == d ? IntMatrix(0, n) : D[static_cast<std::size_t>(i)];
    out.push_back(homology(in, outm, n, modulus_of(cx.base)));
  }
  return out;
}

EtaComplex as_eta(const KoszulMatrices& K) {
  EtaComplex E;
  E.scale.assign(static_cast<std::size_t>(K.d + 1), QPoly::constant(1));
  E.diff = K.diff;
  return E;
}

EtaComplex decalage(const EtaComplex& C, const QPoly& f) {
  EtaComplex E;
  QPoly fi = QPoly::constant(1);
  for (const auto& s : C.scale) {
    E.scale.push_back(s * fi);
    fi = fi * f;
  }
  for (const auto& M : C.diff) {
    PolyMatrix N = M;
    for (auto& row : N)
      for (auto& e : row) {
        auto [q, r] = divmod(e, f);
        if (!r.is_zero()) throw std::invalid_argument("decalage: differential not divisible by " + f.describe());
        e = q;
      }
    E.diff.push_back(std::move(N));
  }
  return E;
}

namespace {
std::vector<QPoly> q_power_minus_one(const IntVector& a, long factor) {
  std::vector<QPoly> ops;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    ops.push_back(QPoly::monomial(1, static_cast<std::size_t>(factor * a(i).convert_to<long>())) - QPoly::constant(1));
  return ops;
}

bool same_eta(const EtaComplex& a, const EtaComplex& b) { return a.scale == b.scale && a.diff == b.diff; }
}  // namespace

DecalageReport decalage_koszul(int d, int degree_bound) {
  DecalageReport R;
  R.d = d;
  R.degree_bound = degree_bound;
  const QBase Zq = QBase::integral();
  const QPoly mu = mu_poly();
  for (const auto& a : all_multidegrees(d, degree_bound)) {
    ++R.multidegrees;
    KoszulMatrices K = koszul_matrices(q_power_minus_one(a, 1), Zq);
    std::vector<QPoly> qint;
    for (Eigen::Index i = 0; i < d; ++i) qint.push_back(q_integer(a(i).convert_to<long>(), Zq));
    KoszulMatrices Kq = koszul_matrices(qint, Zq);
    bool ok = true;
    try {
      EtaComplex E = decalage(as_eta(K), mu);
      ok = E.diff == Kq.diff;
      // x -> mu^i x is a chain map Kos([a]_q) -> Kos(q^a - 1) onto eta_mu
      QPoly mi = QPoly::constant(1);
      for (int i = 0; i < d && ok; ++i) {
        ok = E.scale[static_cast<std::size_t>(i)] == mi;
        const auto& A = K.diff[static_cast<std::size_t>(i)];
        const auto& B = Kq.diff[static_cast<std::size_t>(i)];
        for (std::size_t r = 0; r < A.size() && ok; ++r)
          for (std::size_t c = 0; c < A[r].size() && ok; ++c) ok = A[r][c] * mi == mi * mu * B[r][c];
        mi = mi * mu;
      }
      ok = ok && E.scale.back() == mi;
    } catch (const std::invalid_argument&) {
      ok = false;
    }
    if (!ok) R.failures.push_back(a);
  }
  R.verified = R.failures.empty();
  return R;
}

bool decalage_composition(int d, int degree_bound, int p) {
  const QBase Zq = QBase::integral();
  const QPoly mu = mu_poly(), cp = cyclotomic_prime(p);
  for (const auto& a : all_multidegrees(d, degree_bound)) {
    EtaComplex base = as_eta(koszul_matrices(q_power_minus_one(a, p), Zq));
    try {
      EtaComplex two = decalage(decalage(base, cp), mu);
      EtaComplex one = decalage(base, mu * cp);
      if (!same_eta(two, one)) return false;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  return true;
}

LogAffineReport log_affine_space_tables(int d, int degree_bound, int p) {
  LogAffineReport R;
  R.d = d;
  R.degree_bound = degree_bound;
  R.p = p;

  // q = 1: [a_i]_1 = a_i, cohomology equals that of Kos(Z; a_1..a_d)
  QComplex one = QComplex::log_q_de_rham(d, degree_bound, QBase::q_one());
  R.de_rham_matches = true;
  for (std::size_t k = 0; k < one.multidegrees.size(); ++k) {
    std::vector<QPoly> direct;
    for (int i = 0; i < d; ++i) direct.push_back(QPoly::constant(one.multidegrees[k](i)));
    if (direct != one.operators[k]) R.de_rham_matches = false;
    auto h1 = koszul_cohomology(one.operators[k], QBase::q_one());
    auto h2 = koszul_cohomology(direct, QBase::q_one());
    for (std::size_t i = 0; i < h1.size(); ++i)
      if (h1[i].free_rank != h2[i].free_rank || h1[i].torsion != h2[i].torsion) R.de_rham_matches = false;
  }

  QComplex z = QComplex::log_q_de_rham(d, degree_bound, QBase::zeta(p));
  CohomologyTable T = koszul_cohomology(z);
  R.support_p_divisible = true;
  R.rank_pattern = true;
  for (std::size_t k = 0; k < T.multidegrees.size(); ++k) {
    const IntVector& a = T.multidegrees[k];
    bool nonzero = false;
    for (const auto& h : T.per_multidegree[k]) nonzero = nonzero || h.free_rank != 0 || !h.torsion.empty();
    bool divisible = true;
    for (Eigen::Index i = 0; i < a.size(); ++i) divisible = divisible && mod_floor(a(i), p) == 0;
    if (nonzero) R.support.push_back(a);
    if (nonzero != divisible) R.support_p_divisible = false;
    if (divisible)
      for (int i = 0; i <= d; ++i) {
        const auto& h = T.per_multidegree[k][static_cast<std::size_t>(i)];
        if (h.base_rank != binomial(d, i) || !h.torsion.empty()) R.rank_pattern = false;
      }
  }

  QComplex t = QComplex::trivial(d, degree_bound, QBase::q_one());
  CohomologyTable Tt = koszul_cohomology(t);
  R.trivial_operators = true;
  for (const auto& hs : Tt.per_multidegree)
    for (int i = 0; i <= d; ++i)
      if (hs[static_cast<std::size_t>(i)].free_rank != binomial(d, i) || !hs[static_cast<std::size_t>(i)].torsion.empty())
        R.trivial_operators = false;
  return R;
}

}  // namespace lmon
