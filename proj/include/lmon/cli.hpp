#pragma once

// JSON descriptors, job dispatch and certificates for the command-line tool.

#include "lmon/hom.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmon::cli {

using json = nlohmann::json;

inline constexpr const char* kSchema = "lmon-certificate/1";
inline constexpr const char* kVersion = "0.1.0";

// malformed input or violated precondition; exit code 2
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JobSpec {
  std::string command;   // check | decompose | pushout | conductor | koszul
  std::string property;  // check: pseudo-saturated | exact | integral | quasi-saturated | chart
  std::string category = "sat";  // pushout: int | sat
  json pair, map;                 // descriptors, null when absent
  std::string point;              // "3,1" or "5/2,0"
  Integer level = 1;              // base change along N -> (1/level) N
  std::vector<int> primes;
  int dim = 1, prime = 2, deg_bound = 3;
  std::uint64_t seed = 1;
  int trials = 200;
};

struct RunResult {
  json certificate;
  int exit_code = 0;  // 0 pass, 1 property fails
};

AffineMonoid parse_monoid(const json& j);
MonoidHom parse_hom(const json& j);
PairNP parse_pair(const json& j);
json monoid_json(const AffineMonoid& M);
json hom_json(const MonoidHom& u);
QVector parse_point(const std::string& s);
Integer parse_level(const std::string& s);  // "1/2" or "2"
std::vector<int> parse_primes(const std::string& s);

json read_json_file(const std::string& path);  // InputError carries the byte offset
std::string dump(const json& j);               // byte-stable rendering

RunResult run(const JobSpec& job);
std::string render_table(const json& certificate);

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> problems;
};
// throws InputError on schema problems
VerifyResult verify(const json& certificate);

}  // namespace lmon::cli
