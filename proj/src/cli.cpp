#include "lmon/cli.hpp"

#include "lmon/pushout.hpp"
#include "lmon/qkoszul.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace lmon::cli {

namespace {

json num(const Integer& x) { return to_string(x); }
json num(const Rational& x) { return to_string(x); }
json num(long x) { return std::to_string(x); }

json vec(const IntVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

json vec(const QVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

json mat(const IntMatrix& M) {
  json a = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) a.push_back(vec(IntVector(M.row(i).transpose())));
  return a;
}

json ints(const std::vector<int>& v) {
  json a = json::array();
  for (int x : v) a.push_back(num(static_cast<long>(x)));
  return a;
}

json group_json(const FGAbelianGroup& G) {
  json t = json::array();
  for (const auto& d : G.invariant_factors) t.push_back(num(d));
  return {{"rank", num(static_cast<long>(G.free_rank))}, {"torsion", t}, {"describe", G.describe()}};
}

Rational as_rational(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::exception&) {
  }
  throw InputError(where + ": expected an exact rational, got " + j.dump());
}

Integer as_integer(const json& j, const std::string& where) {
  Rational r = as_rational(j, where);
  if (denominator(r) != 1) throw InputError(where + ": expected an integer, got " + j.dump());
  return numerator(r);
}

long as_long(const json& j, const std::string& where) { return as_integer(j, where).convert_to<long>(); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

IntVector int_vector(const json& j, Eigen::Index len, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  if (len >= 0 && static_cast<Eigen::Index>(j.size()) != len)
    throw InputError(where + ": expected length " + std::to_string(len) + ", got " + std::to_string(j.size()));
  IntVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = as_integer(j[i], where);
  return v;
}

QVector q_vector(const json& j, Eigen::Index len, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  if (static_cast<Eigen::Index>(j.size()) != len)
    throw InputError(where + ": expected length " + std::to_string(len) + ", got " + std::to_string(j.size()));
  QVector v(len);
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = as_rational(j[i], where);
  return v;
}

std::vector<int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(static_cast<int>(as_long(x, where)));
  return out;
}

json face_json(const Face& F) {
  return {{"tight_facets", ints(F.tight_facets)}, {"dim", num(static_cast<long>(F.dim))}};
}

std::optional<Face> find_face(const RationalCone& C, const std::vector<int>& tight) {
  for (const auto& F : face_lattice(C))
    if (F.tight_facets == tight) return F;
  return std::nullopt;
}

json conductor_json(const ConductorBound& c) {
  return {{"determinant_bound", num(c.determinant_bound)},
          {"lattice_index", num(c.lattice_index)},
          {"certified", num(c.certified)},
          {"refined", num(c.refined)},
          {"meaningful", c.meaningful}};
}

json decomposition_json(const MinimalDecomposition& d) {
  return {{"y", vec(d.y_part)}, {"q", vec(d.n_part)}, {"face", face_json(d.face)}};
}

PairNP pair_of(const JobSpec& job) {
  if (!job.pair.is_null()) return parse_pair(job.pair);
  if (!job.map.is_null()) return PairNP::from_hom(parse_hom(job.map));
  throw InputError("missing --pair or --map");
}

json pair_echo(const JobSpec& job) {
  if (!job.pair.is_null()) return {{"pair", job.pair}};
  return {{"map", job.map}};
}

MonoidHom map_of(const JobSpec& job) {
  if (job.map.is_null()) throw InputError("missing --map");
  return parse_hom(job.map);
}

json base_certificate(const JobSpec& job, json command) {
  command["name"] = job.command;
  return {{"schema", kSchema},
          {"command", std::move(command)},
          {"provenance", {{"version", kVersion}, {"seed", std::to_string(job.seed)}}}};
}

RunResult run_pseudo_saturated(const JobSpec& job) {
  PairNP pair = pair_of(job);
  DecompositionCertificate c = is_pseudo_saturated(pair);
  json cmd = pair_echo(job);
  cmd["property"] = "pseudo-saturated";
  json cert = base_certificate(job, cmd);
  cert["verdict"] = c.pseudo_saturated ? "pseudo-saturated" : "not";
  cert["degenerate"] = c.degenerate;
  json faces = json::array();
  for (const auto& F : c.minimal_faces) faces.push_back(face_json(F));
  cert["minimal_faces"] = faces;
  if (c.pseudo_saturated) {
    json table = json::array();
    for (const auto& r : c.table) {
      json probes = json::array();
      for (std::size_t k = 0; k < r.probes.size(); ++k)
        probes.push_back({{"coord", num(static_cast<long>(r.probes[k].first))},
                          {"sign", num(static_cast<long>(r.probes[k].second))},
                          {"farkas", vec(r.farkas[k])}});
      table.push_back({{"faces", ints({r.face1, r.face2})}, {"probes", probes}});
    }
    cert["table"] = table;
    cert["conductor"] = conductor_json(c.conductor);
    return {cert, 0};
  }
  const DecompositionWitness& w = *c.witness;
  cert["witness"] = {{"x", vec(w.x)},
                     {"decompositions", json::array({decomposition_json(w.first), decomposition_json(w.second)})}};
  return {cert, 1};
}

RunResult run_exact(const JobSpec& job) {
  MonoidHom u = map_of(job);
  ExactnessResult r = exactness_check(u);
  json cert = base_certificate(job, {{"property", "exact"}, {"map", job.map}});
  cert["verdict"] = r.exact ? "exact" : "not";
  json gens = json::array();
  for (const auto& g : r.preimage_generators) gens.push_back(vec(g));
  cert["preimage_generators"] = gens;
  if (r.counterexample) cert["witness"] = {{"x", vec(*r.counterexample)}};
  return {cert, r.exact ? 0 : 1};
}

RunResult run_integral(const JobSpec& job) {
  MonoidHom u = map_of(job);
  IntegralityResult r = is_integral(u);
  json cert = base_certificate(job, {{"property", "integral"}, {"map", job.map}});
  cert["verdict"] = r.integral ? "integral" : "not";
  json gens = json::array();
  for (const auto& g : r.solution_generators) gens.push_back(vec(g));
  cert["solution_generators"] = gens;
  if (r.failing_solution) cert["witness"] = {{"solution", vec(*r.failing_solution)}};
  return {cert, r.integral ? 0 : 1};
}

json quasi_json(const QuasiSaturationReport& q) {
  json per = json::array();
  for (const auto& c : q.per_prime) {
    json e = {{"p", num(static_cast<long>(c.p))}, {"passes", c.passes}};
    if (c.certificate) e["certificate"] = vec(*c.certificate);
    per.push_back(e);
  }
  return {{"per_prime", per}, {"heuristic_primes", q.heuristic_primes}, {"describe", q.describe()}};
}

RunResult run_quasi(const JobSpec& job) {
  MonoidHom u = map_of(job);
  QuasiSaturationReport q = is_quasi_saturated(u, job.primes);
  json cert = base_certificate(job, {{"property", "quasi-saturated"}, {"map", job.map}, {"primes", ints(job.primes)}});
  cert["verdict"] = q.all_pass() ? "quasi-saturated" : "not";
  cert["report"] = quasi_json(q);
  return {cert, q.all_pass() ? 0 : 1};
}

RunResult run_chart(const JobSpec& job) {
  MonoidHom u = map_of(job);
  ChartReport r = validate_small_chart(u, job.primes);
  json cert = base_certificate(job, {{"property", "chart"}, {"map", job.map}, {"primes", ints(job.primes)}});
  cert["verdict"] = r.valid() ? "valid" : "not";
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  cert["checks"] = checks;
  return {cert, r.valid() ? 0 : 1};
}

RunResult run_decompose(const JobSpec& job) {
  PairNP pair = pair_of(job);
  QVector x = parse_point(job.point);
  if (x.size() != pair.dim()) throw InputError("--point: expected " + std::to_string(pair.dim()) + " coordinates");
  if (!pair.coneP.contains(x)) throw InputError("--point: not in cone(P)");
  Decompositions D = minimal_decompositions(pair, x);
  json cmd = pair_echo(job);
  cmd["point"] = vec(x);
  json cert = base_certificate(job, cmd);
  cert["verdict"] = D.unique() ? "unique" : "not-unique";
  json pts = json::array();
  for (const auto& d : D.points) pts.push_back(decomposition_json(d));
  cert["decompositions"] = pts;
  json pieces = json::array();
  for (const auto& p : D.pieces) {
    json vs = json::array();
    for (const auto& v : p.vertices) vs.push_back(vec(v));
    pieces.push_back({{"face", face_json(p.face)}, {"dim", num(static_cast<long>(p.dim))}, {"vertices", vs}});
  }
  cert["pieces"] = pieces;
  return {cert, D.unique() ? 0 : 1};
}

json pushout_json(const PushoutResult& S, const std::string& category) {
  const AffineMonoid& M = category == "int" ? S.int_monoid : S.sat_monoid;
  json gens = json::array(), lifts = json::array();
  for (const auto& g : M.generators) {
    gens.push_back(vec(g));
    lifts.push_back(vec(IntVector(S.ambient.section * g)));  // (q, n p') representative
  }
  return {{"ambient", group_json(S.ambient)},
          {"lifts", lifts},
          {"envelope", group_json(S.envelope)},
          {"from_q", mat(S.from_q)},
          {"from_p", mat(S.from_p)},
          {"generators", gens},
          {"torsion_free", S.torsion_free()}};
}

RunResult run_pushout(const JobSpec& job) {
  if (job.category != "int" && job.category != "sat") throw InputError("--category: expected int or sat");
  if (job.level < 1) throw InputError("--basechange: level must be positive");
  MonoidHom u = map_of(job);
  PushoutResult S = base_change(u, job.level, job.category == "sat");
  json cert = base_certificate(
      job, {{"map", job.map}, {"category", job.category}, {"basechange", "1/" + to_string(job.level)}});
  cert["verdict"] = "computed";
  cert["pushout"] = pushout_json(S, job.category);
  return {cert, 0};
}

RunResult run_conductor(const JobSpec& job) {
  PairNP pair = pair_of(job);
  ConductorBound c = conductor_bound(pair);
  json cert = base_certificate(job, pair_echo(job));
  cert["verdict"] = c.meaningful ? "bounded" : "not-pseudo-saturated";
  cert["conductor"] = conductor_json(c);
  return {cert, c.meaningful ? 0 : 1};
}

json koszul_table(int d, int bound, int p) {
  QComplex cx = QComplex::log_q_de_rham(d, bound, QBase::zeta(p));
  CohomologyTable T = koszul_cohomology(cx);
  json rows = json::array();
  for (std::size_t k = 0; k < T.multidegrees.size(); ++k) {
    json hs = json::array();
    for (const auto& h : T.per_multidegree[k]) {
      json t = json::array();
      for (const auto& x : h.torsion) t.push_back(num(x));
      hs.push_back({{"z_rank", num(h.free_rank)}, {"rank", num(h.base_rank)}, {"torsion", t}});
    }
    rows.push_back({{"a", vec(T.multidegrees[k])}, {"H", hs}});
  }
  return rows;
}

RunResult run_koszul(const JobSpec& job) {
  if (job.dim < 1 || job.dim > 6) throw InputError("--dim: expected 1..6");
  if (job.deg_bound < 0) throw InputError("--deg-bound: expected a nonnegative bound");
  if (prime_factors(Integer(job.prime)) != std::vector<int>{job.prime}) throw InputError("--prime: expected a prime");
  LogAffineReport r = log_affine_space_tables(job.dim, job.deg_bound, job.prime);
  DecalageReport dk = decalage_koszul(job.dim, job.deg_bound);
  json cert = base_certificate(job, {{"dim", num(static_cast<long>(job.dim))},
                                     {"prime", num(static_cast<long>(job.prime))},
                                     {"deg_bound", num(static_cast<long>(job.deg_bound))}});
  bool ok = r.de_rham_matches && r.support_p_divisible && r.rank_pattern && r.trivial_operators && dk.verified;
  cert["verdict"] = ok ? "verified" : "not";
  cert["checks"] = {{"de_rham_matches", r.de_rham_matches},
                    {"support_p_divisible", r.support_p_divisible},
                    {"rank_pattern", r.rank_pattern},
                    {"trivial_operators", r.trivial_operators},
                    {"decalage", dk.verified}};
  cert["table"] = koszul_table(job.dim, job.deg_bound, job.prime);
  return {cert, ok ? 0 : 1};
}

// ---- verification

struct Checker {
  VerifyResult r;
  void need(bool cond, const std::string& what) {
    if (!cond) r.problems.push_back(what);
  }
};

JobSpec job_from_command(const json& cmd) {
  JobSpec job;
  job.command = field(cmd, "name", "command").get<std::string>();
  if (cmd.contains("property")) job.property = cmd.at("property").get<std::string>();
  if (cmd.contains("pair")) job.pair = cmd.at("pair");
  if (cmd.contains("map")) job.map = cmd.at("map");
  if (cmd.contains("primes")) job.primes = int_list(cmd.at("primes"), "command.primes");
  if (cmd.contains("point")) {
    const json& pt = cmd.at("point");
    if (!pt.is_array()) throw InputError("command.point: expected an array");
    for (std::size_t i = 0; i < pt.size(); ++i)
      job.point += (i ? "," : "") + to_string(as_rational(pt[i], "command.point"));
  }
  if (cmd.contains("category")) job.category = cmd.at("category").get<std::string>();
  if (cmd.contains("basechange")) job.level = parse_level(cmd.at("basechange").get<std::string>());
  if (cmd.contains("dim")) job.dim = static_cast<int>(as_long(cmd.at("dim"), "command.dim"));
  if (cmd.contains("prime")) job.prime = static_cast<int>(as_long(cmd.at("prime"), "command.prime"));
  if (cmd.contains("deg_bound")) job.deg_bound = static_cast<int>(as_long(cmd.at("deg_bound"), "command.deg_bound"));
  return job;
}

void check_decomposition(Checker& ck, const PairNP& pair, const QVector& x, const json& d, const std::string& where) {
  QVector y = q_vector(field(d, "y", where), pair.dim(), where + ".y");
  QVector q = q_vector(field(d, "q", where), pair.dim(), where + ".q");
  ck.need(vec_equal(QVector(y + q), x), where + ": y + q != x");
  ck.need(pair.coneP.contains(y), where + ": y not in cone(P)");
  ck.need(pair.coneN.contains(q), where + ": q not in cone(N)");
  ck.need(is_minimal_point(pair, y), where + ": y is not minimal");
}

void verify_pseudo_saturated(Checker& ck, const json& cert, const JobSpec& job) {
  PairNP pair = pair_of(job);
  const Eigen::Index m = pair.dim();
  std::string verdict = field(cert, "verdict", "certificate").get<std::string>();
  if (verdict == "not") {
    const json& w = field(cert, "witness", "certificate");
    QVector x = q_vector(field(w, "x", "witness"), m, "witness.x");
    const json& ds = field(w, "decompositions", "witness");
    if (!ds.is_array() || ds.size() != 2) throw InputError("witness.decompositions: expected two entries");
    check_decomposition(ck, pair, x, ds[0], "witness.decompositions[0]");
    check_decomposition(ck, pair, x, ds[1], "witness.decompositions[1]");
    ck.need(!vec_equal(q_vector(ds[0].at("y"), m, "y"), q_vector(ds[1].at("y"), m, "y")),
            "witness: the two decompositions coincide");
    return;
  }
  if (verdict != "pseudo-saturated") throw InputError("verdict: unknown value " + verdict);
  if (pair.degenerate()) {
    ck.need(field(cert, "degenerate", "certificate").get<bool>(), "degenerate pair not flagged");
    return;
  }
  std::vector<Face> faces;
  for (const auto& f : field(cert, "minimal_faces", "certificate")) {
    auto F = find_face(pair.coneP, int_list(field(f, "tight_facets", "minimal_faces"), "minimal_faces"));
    if (!F) {
      ck.need(false, "minimal_faces: not a face of cone(P)");
      return;
    }
    ck.need(is_minimal_face(pair, *F), "minimal_faces: listed face is not minimal");
    faces.push_back(*F);
  }
  // every face of cone(P) is either listed or fails the minimality test
  for (const auto& F : face_lattice(pair.coneP)) {
    bool listed = std::find(faces.begin(), faces.end(), F) != faces.end();
    ck.need(listed || !is_minimal_face(pair, F), "minimal_faces: a minimal face is missing");
  }
  const int nf = static_cast<int>(faces.size());
  std::set<std::pair<int, int>> seen;
  for (const auto& row : field(cert, "table", "certificate")) {
    std::vector<int> ab = int_list(field(row, "faces", "table"), "table.faces");
    if (ab.size() != 2 || ab[0] < 0 || ab[1] < ab[0] || ab[1] >= nf) throw InputError("table.faces: bad index pair");
    seen.insert({ab[0], ab[1]});
    std::set<std::pair<long, long>> probes;
    for (const auto& p : field(row, "probes", "table")) {
      long coord = as_long(field(p, "coord", "probe"), "probe.coord");
      long sign = as_long(field(p, "sign", "probe"), "probe.sign");
      if (coord < 0 || coord >= m || (sign != 1 && sign != -1)) throw InputError("probe: bad coordinate or sign");
      probes.insert({coord, sign});
      RationalPolyhedron S = face_pair_system(pair, faces[static_cast<std::size_t>(ab[0])],
                                              faces[static_cast<std::size_t>(ab[1])], coord, static_cast<int>(sign));
      StrictStandardForm sf = strict_standard_form(S);
      QVector f = q_vector(field(p, "farkas", "probe"), sf.b.size(), "probe.farkas");
      ck.need(check_farkas(sf.A, sf.b, f), "table: Farkas vector does not certify infeasibility");
    }
    for (long i = 0; i < m; ++i)
      for (long s : {1L, -1L}) {
        if (ab[0] == ab[1] && s < 0) continue;
        ck.need(probes.count({i, s}) > 0, "table: missing probe");
      }
  }
  for (int a = 0; a < nf; ++a)
    for (int b = a; b < nf; ++b) ck.need(seen.count({a, b}) > 0, "table: missing face pair");
}

void verify_exact(Checker& ck, const json& cert, const JobSpec& job) {
  MonoidHom u = map_of(job);
  MemberSolver src(u.source), tgt(u.target);
  std::string verdict = field(cert, "verdict", "certificate").get<std::string>();
  for (const auto& g : field(cert, "preimage_generators", "certificate")) {
    IntVector v = int_vector(g, u.source.dim(), "preimage_generators");
    ck.need(tgt.contains(u.apply(v)), "preimage generator does not map into the target");
  }
  if (verdict == "not") {
    IntVector x = int_vector(field(field(cert, "witness", "certificate"), "x", "witness"), u.source.dim(), "witness.x");
    ck.need(tgt.contains(u.apply(x)), "witness does not map into the target");
    ck.need(!src.contains(x), "witness lies in the source monoid");
  } else {
    for (const auto& g : cert.at("preimage_generators"))
      ck.need(src.contains(int_vector(g, u.source.dim(), "preimage_generators")), "preimage generator outside source");
    ck.need(exactness_check(u).exact, "exactness does not hold on recomputation");
  }
}

void verify_integral(Checker& ck, const json& cert, const JobSpec& job) {
  MonoidHom u = map_of(job);
  const Eigen::Index p = u.source.dim(), q = u.target.dim();
  for (const auto& g : field(cert, "solution_generators", "certificate")) {
    IntVector s = int_vector(g, 2 * p + 2 * q, "solution_generators");
    ck.need(vec_equal(u.target.ambient.reduce(IntVector(u.matrix * s.segment(0, p) + s.segment(2 * p, q))),
                      u.target.ambient.reduce(IntVector(u.matrix * s.segment(p, p) + s.segment(2 * p + q, q)))),
            "solution generator does not solve u(a1) + b1 = u(a2) + b2");
  }
  IntegralityResult r = is_integral(u);
  ck.need((cert.at("verdict") == "integral") == r.integral, "integrality verdict differs on recomputation");
  if (cert.contains("witness")) {
    IntVector s = int_vector(field(cert.at("witness"), "solution", "witness"), 2 * p + 2 * q, "witness.solution");
    ck.need(r.failing_solution && vec_equal(s, *r.failing_solution), "failing solution differs on recomputation");
  }
}

void verify_recomputed(Checker& ck, const json& cert, const JobSpec& job, const std::vector<std::string>& keys) {
  RunResult again = run(job);
  for (const auto& k : keys)
    ck.need(cert.contains(k) && cert.at(k) == again.certificate.at(k), "field \"" + k + "\" differs on recomputation");
}

void verify_decompose(Checker& ck, const json& cert, const JobSpec& job) {
  PairNP pair = pair_of(job);
  QVector x = q_vector(field(field(cert, "command", "certificate"), "point", "command"), pair.dim(), "command.point");
  for (const auto& d : field(cert, "decompositions", "certificate")) check_decomposition(ck, pair, x, d, "decompositions");
  verify_recomputed(ck, cert, job, {"verdict", "decompositions", "pieces"});
}

void verify_pushout(Checker& ck, const json& cert, const JobSpec& job) {
  MonoidHom u = map_of(job);
  PushoutResult S = base_change(u, job.level, job.category == "sat");
  const json& po = field(cert, "pushout", "certificate");
  std::vector<IntVector> gens;
  for (const auto& g : field(po, "generators", "pushout")) gens.push_back(int_vector(g, S.ambient.dim(), "generators"));
  AffineMonoid M = AffineMonoid::make(S.ambient, gens);
  MemberSolver ms(M);
  // the images of both structure maps lie in the listed monoid
  for (const auto& q : u.target.generators)
    ck.need(ms.contains(S.class_of(q, zeros<Integer>(u.source.dim()))), "image of Q is not generated");
  for (const auto& n : u.source.generators)
    ck.need(ms.contains(S.class_of(zeros<Integer>(u.target.dim()), n)), "image of (1/n)N is not generated");
  const AffineMonoid& ref = job.category == "int" ? S.int_monoid : S.sat_monoid;
  MemberSolver rs(ref);
  for (const auto& g : M.generators) ck.need(rs.contains(g), "generator outside the pushout");
  ck.need(po.at("ambient") == group_json(S.ambient), "ambient group differs");
}

}  // namespace

AffineMonoid parse_monoid(const json& j) {
  const json& amb = field(j, "ambient", "monoid");
  long rank = as_long(field(amb, "rank", "ambient"), "ambient.rank");
  if (rank < 0) throw InputError("ambient.rank: must be nonnegative");
  std::vector<Integer> torsion;
  if (amb.contains("torsion"))
    for (const auto& t : amb.at("torsion")) {
      Integer d = as_integer(t, "ambient.torsion");
      if (d < 2) throw InputError("ambient.torsion: invariant factors must be >= 2");
      torsion.push_back(d);
    }
  const Eigen::Index dim = rank + static_cast<Eigen::Index>(torsion.size());
  std::vector<IntVector> gens;
  const json& gs = field(j, "generators", "monoid");
  if (!gs.is_array()) throw InputError("monoid.generators: expected an array");
  for (const auto& g : gs) gens.push_back(int_vector(g, dim, "monoid.generators"));
  try {
    return AffineMonoid::make(FGAbelianGroup::from_invariants(rank, torsion), gens);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("monoid: ") + e.what());
  }
}

MonoidHom parse_hom(const json& j) {
  AffineMonoid src = parse_monoid(field(j, "source", "map"));
  AffineMonoid tgt = parse_monoid(field(j, "target", "map"));
  const json& rows = field(j, "matrix", "map");
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != tgt.dim())
    throw InputError("map.matrix: expected " + std::to_string(tgt.dim()) + " rows");
  IntMatrix A(tgt.dim(), src.dim());
  for (std::size_t i = 0; i < rows.size(); ++i)
    A.row(static_cast<Eigen::Index>(i)) = int_vector(rows[i], src.dim(), "map.matrix").transpose();
  try {
    return MonoidHom::make(src, tgt, A);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("map: ") + e.what());
  }
}

PairNP parse_pair(const json& j) {
  AffineMonoid P = parse_monoid(field(j, "P", "pair"));
  std::vector<IntVector> ng;
  for (const auto& g : field(j, "N_generators_in_P", "pair")) ng.push_back(int_vector(g, P.dim(), "N_generators_in_P"));
  try {
    return PairNP::make(P, ng);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("pair: ") + e.what());
  }
}

json monoid_json(const AffineMonoid& M) {
  json t = json::array();
  for (const auto& d : M.ambient.invariant_factors) t.push_back(num(d));
  json g = json::array();
  for (const auto& v : M.generators) g.push_back(vec(v));
  return {{"ambient", {{"rank", num(static_cast<long>(M.ambient.free_rank))}, {"torsion", t}}}, {"generators", g}};
}

json hom_json(const MonoidHom& u) {
  return {{"source", monoid_json(u.source)}, {"target", monoid_json(u.target)}, {"matrix", mat(u.matrix)}};
}

QVector parse_point(const std::string& s) {
  std::vector<Rational> xs;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      xs.push_back(parse_rational(tok));
    } catch (const std::exception&) {
      throw InputError("--point: cannot parse \"" + tok + "\"");
    }
  }
  if (xs.empty()) throw InputError("--point: empty");
  QVector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

Integer parse_level(const std::string& s) {
  Rational r;
  try {
    r = parse_rational(s);
  } catch (const std::exception&) {
    throw InputError("--basechange: cannot parse \"" + s + "\"");
  }
  if (r <= 0) throw InputError("--basechange: must be positive");
  // "1/n" and "n" both name the level n
  if (numerator(r) == 1) return denominator(r);
  if (denominator(r) == 1) return numerator(r);
  throw InputError("--basechange: expected 1/n");
}

std::vector<int> parse_primes(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    int p = 0;
    try {
      p = std::stoi(tok);
    } catch (const std::exception&) {
      throw InputError("--primes: cannot parse \"" + tok + "\"");
    }
    if (p < 2 || prime_factors(Integer(p)) != std::vector<int>{p}) throw InputError("--primes: " + tok + " is not prime");
    out.push_back(p);
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError(path + ": malformed JSON at byte " + std::to_string(e.byte));
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

RunResult run(const JobSpec& job) {
  if (job.command == "check") {
    if (job.property == "pseudo-saturated") return run_pseudo_saturated(job);
    if (job.property == "exact") return run_exact(job);
    if (job.property == "integral") return run_integral(job);
    if (job.property == "quasi-saturated") return run_quasi(job);
    if (job.property == "chart") return run_chart(job);
    throw InputError("check: unknown property \"" + job.property + "\"");
  }
  if (job.command == "decompose") return run_decompose(job);
  if (job.command == "pushout") return run_pushout(job);
  if (job.command == "conductor") return run_conductor(job);
  if (job.command == "koszul") return run_koszul(job);
  throw InputError("unknown command \"" + job.command + "\"");
}

VerifyResult verify(const json& cert) {
  if (!cert.is_object() || cert.empty()) throw InputError("certificate: empty or not an object");
  const json& schema = field(cert, "schema", "certificate");
  if (!schema.is_string() || schema.get<std::string>() != kSchema)
    throw InputError("certificate: stale or unknown schema " + schema.dump());
  field(cert, "verdict", "certificate");
  JobSpec job = job_from_command(field(cert, "command", "certificate"));
  Checker ck;
  if (job.command == "check" && job.property == "pseudo-saturated") verify_pseudo_saturated(ck, cert, job);
  else if (job.command == "check" && job.property == "exact") verify_exact(ck, cert, job);
  else if (job.command == "check" && job.property == "integral") verify_integral(ck, cert, job);
  else if (job.command == "check") verify_recomputed(ck, cert, job, {"verdict", job.property == "chart" ? "checks" : "report"});
  else if (job.command == "decompose") verify_decompose(ck, cert, job);
  else if (job.command == "pushout") verify_pushout(ck, cert, job);
  else if (job.command == "conductor") verify_recomputed(ck, cert, job, {"verdict", "conductor"});
  else if (job.command == "koszul") verify_recomputed(ck, cert, job, {"verdict", "checks", "table"});
  else throw InputError("certificate: unknown command");
  ck.r.ok = ck.r.problems.empty();
  return ck.r;
}

std::string render_table(const json& cert) {
  std::ostringstream s;
  const json& cmd = cert.at("command");
  s << "command  " << cmd.at("name").get<std::string>();
  if (cmd.contains("property")) s << " " << cmd.at("property").get<std::string>();
  s << "\nverdict  " << cert.at("verdict").get<std::string>() << "\n";
  auto row = [](const json& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get<std::string>();
    return out + ")";
  };
  if (cert.contains("witness") && cert.at("witness").contains("decompositions")) {
    const json& w = cert.at("witness");
    s << "witness  x = " << row(w.at("x")) << "\n";
    for (const auto& d : w.at("decompositions")) s << "         " << row(d.at("y")) << " + " << row(d.at("q")) << "\n";
  } else if (cert.contains("witness")) {
    for (const auto& [k, v] : cert.at("witness").items()) s << "witness  " << k << " = " << row(v) << "\n";
  }
  if (cert.contains("decompositions"))
    for (const auto& d : cert.at("decompositions")) s << "         " << row(d.at("y")) << " + " << row(d.at("q")) << "\n";
  if (cert.contains("table") && cmd.at("name") == "check") {
    s << "face pairs  " << cert.at("table").size() << " infeasible\n";
  }
  if (cert.contains("conductor")) {
    const json& c = cert.at("conductor");
    s << "conductor  refined " << c.at("refined").get<std::string>() << ", certified " << c.at("certified").get<std::string>()
      << "\n";
  }
  if (cert.contains("pushout")) {
    const json& p = cert.at("pushout");
    s << "ambient  " << p.at("ambient").at("describe").get<std::string>() << "\n";
    for (std::size_t i = 0; i < p.at("generators").size(); ++i)
      s << "         " << row(p.at("generators")[i]) << "  lift " << row(p.at("lifts")[i]) << "\n";
  }
  if (cert.contains("report")) s << "primes   " << cert.at("report").at("describe").get<std::string>() << "\n";
  if (cert.contains("checks")) {
    if (cert.at("checks").is_array())
      for (const auto& c : cert.at("checks"))
        s << (c.at("passed").get<bool>() ? "  ok    " : "  FAIL  ") << c.at("name").get<std::string>() << "  "
          << c.at("detail").get<std::string>() << "\n";
    else
      for (const auto& [k, v] : cert.at("checks").items()) s << (v.get<bool>() ? "  ok    " : "  FAIL  ") << k << "\n";
  }
  if (cmd.at("name") == "koszul")
    for (const auto& r : cert.at("table")) {
      bool any = false;
      for (const auto& h : r.at("H")) any = any || h.at("z_rank") != "0" || !h.at("torsion").empty();
      if (!any) continue;
      s << "  a = " << row(r.at("a")) << "  ranks";
      for (const auto& h : r.at("H")) s << " " << h.at("rank").get<std::string>();
      s << "\n";
    }
  return s.str();
}

}  // namespace lmon::cli
