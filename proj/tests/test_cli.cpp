#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lmon/cli.hpp"

#include <cstdio>
#include <fstream>

using namespace lmon;
using namespace lmon::cli;

namespace {
std::string data(const char* name) { return std::string(LMON_DATA_DIR) + "/" + name; }

JobSpec pair_job(const char* command, const char* property, const char* file) {
  JobSpec j;
  j.command = command;
  j.property = property;
  j.pair = read_json_file(data(file));
  return j;
}

JobSpec pushout_job(const char* category) {
  JobSpec j;
  j.command = "pushout";
  j.category = category;
  j.map = read_json_file(data("x_2x.json"));
  j.level = 2;
  return j;
}
}  // namespace

TEST_CASE("descriptors") {
  auto P = parse_monoid(json::parse(R"({"ambient":{"rank":2,"torsion":["2"]},"generators":[[1,0,1],["0","1","0"]]})"));
  CHECK(P.ambient.describe() == "Z^2 + Z/2");
  CHECK(P.generators.size() == 2);
  CHECK_THROWS_AS(parse_monoid(json::parse(R"({"ambient":{"rank":2},"generators":[[1]]})")), InputError);
  CHECK_THROWS_AS(parse_monoid(json::parse(R"({"generators":[[1]]})")), InputError);
  CHECK_THROWS_AS(parse_monoid(json::parse(R"({"ambient":{"rank":1},"generators":[["1/2"]]})")), InputError);
  auto u = parse_hom(read_json_file(data("x_2x.json")));
  CHECK(u.matrix == int_mat({{1}, {2}}));
  CHECK(parse_hom(hom_json(u)).matrix == u.matrix);
  CHECK(parse_level("1/2") == 2);
  CHECK(parse_level("3") == 3);
  CHECK_THROWS_AS(parse_level("2/3"), InputError);
  CHECK(vec_equal(parse_point("5/2,0"), QVector(to_rational(int_vec({5, 0})) / Rational(2))));
  CHECK_THROWS_AS(parse_primes("2,4"), InputError);
  // P meets -N: rejected with the invariant named
  json bad = json::parse(R"({"P":{"ambient":{"rank":1},"generators":[[1],[-1]]},"N_generators_in_P":[[1]]})");
  CHECK_THROWS_AS(parse_pair(bad), InputError);
}

TEST_CASE("malformed JSON reports a position") {
  const char* path = "lmon_test_malformed.json";
  {
    std::ofstream f(path);
    f << "{\"P\": [1, 2,, 3]}";
  }
  try {
    read_json_file(path);
    CHECK(false);
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  std::remove(path);
}

TEST_CASE("worked examples through the dispatcher") {
  auto m = run(pair_job("check", "pseudo-saturated", "m_plane.json"));
  CHECK(m.exit_code == 1);
  CHECK(m.certificate["verdict"] == "not");
  CHECK(m.certificate["witness"]["x"] == json::array({"1", "1", "1"}));
  CHECK(m.certificate["witness"]["decompositions"].size() == 2);

  JobSpec d = pair_job("decompose", "", "n11.json");
  d.point = "3,1";
  auto dr = run(d);
  CHECK(dr.exit_code == 0);
  REQUIRE(dr.certificate["decompositions"].size() == 1);
  CHECK(dr.certificate["decompositions"][0]["y"] == json::array({"2", "0"}));
  CHECK(dr.certificate["decompositions"][0]["q"] == json::array({"1", "1"}));

  auto po = run(pushout_job("sat"));
  CHECK(po.exit_code == 0);
  CHECK(po.certificate["pushout"]["ambient"]["describe"] == "Z^2");
  CHECK(po.certificate["command"]["basechange"] == "1/2");
}

TEST_CASE("certificates re-verify, tampering is caught") {
  std::vector<JobSpec> jobs = {pair_job("check", "pseudo-saturated", "m_plane.json"),
                               pair_job("check", "pseudo-saturated", "n11.json"), pushout_job("sat"), pushout_job("int")};
  JobSpec d = pair_job("decompose", "", "n11.json");
  d.point = "3,1";
  jobs.push_back(d);
  JobSpec c = pair_job("conductor", "", "n11.json");
  jobs.push_back(c);
  JobSpec k;
  k.command = "koszul";
  k.dim = 2;
  k.prime = 2;
  k.deg_bound = 3;
  jobs.push_back(k);
  for (const char* prop : {"exact", "integral", "quasi-saturated", "chart"}) {
    JobSpec e;
    e.command = "check";
    e.property = prop;
    e.map = read_json_file(data("x_2x.json"));
    e.primes = {2, 3};
    jobs.push_back(e);
  }
  for (const auto& j : jobs) {
    auto r = run(j);
    CAPTURE(j.command);
    CAPTURE(j.property);
    auto v = verify(r.certificate);
    CHECK(v.ok);
    // round trip through text
    CHECK(verify(json::parse(dump(r.certificate))).ok);
    CHECK(dump(run(j).certificate) == dump(r.certificate));
  }

  auto m = run(pair_job("check", "pseudo-saturated", "m_plane.json")).certificate;
  json t = m;
  t["witness"]["x"] = json::array({"1", "1", "2"});
  CHECK_FALSE(verify(t).ok);
  t = m;
  t["witness"]["decompositions"][1] = t["witness"]["decompositions"][0];
  CHECK_FALSE(verify(t).ok);

  auto n = run(pair_job("check", "pseudo-saturated", "n11.json")).certificate;
  t = n;
  t["table"][0]["probes"][0]["farkas"][0] = "7";
  CHECK_FALSE(verify(t).ok);
  t = n;
  t["table"].erase(t["table"].size() - 1);
  CHECK_FALSE(verify(t).ok);

  auto p = run(pushout_job("sat")).certificate;
  t = p;
  t["pushout"]["generators"].erase(0);
  CHECK_FALSE(verify(t).ok);

  CHECK_THROWS_AS(verify(json::object()), InputError);
  t = m;
  t["schema"] = "lmon-certificate/0";
  CHECK_THROWS_AS(verify(t), InputError);
}
