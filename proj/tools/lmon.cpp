#include "lmon/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using lmon::cli::InputError;
using lmon::cli::json;

struct Options {
  std::string pair_path, map_path, point, basechange, primes, out, format = "json";
  int level = 0;
  int jobs = 1;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lmon: monoid homomorphisms, decompositions, pushouts and q-Koszul complexes"};
  app.require_subcommand(1);
  Options o;
  lmon::cli::JobSpec job;
  std::string property, cert_path;

  auto common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "write output to a file");
    c->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    c->add_option("--seed", job.seed, "random seed");
    c->add_option("--jobs", o.jobs, "worker count (computations run on one thread)");
    c->add_option("--primes", o.primes, "comma separated prime set");
  };
  auto* check = app.add_subcommand("check", "decide a property and emit a certificate");
  check->add_option("property", property, "pseudo-saturated | exact | integral | quasi-saturated | chart")->required();
  check->add_option("--pair", o.pair_path, "pair descriptor");
  check->add_option("--map", o.map_path, "hom descriptor");
  common(check);
  auto* decompose = app.add_subcommand("decompose", "minimal decompositions of a point");
  decompose->add_option("--pair", o.pair_path, "pair descriptor");
  decompose->add_option("--map", o.map_path, "hom descriptor");
  decompose->add_option("--point", o.point, "comma separated rationals")->required();
  common(decompose);
  auto* pushout = app.add_subcommand("pushout", "pushout along N -> (1/n)N");
  pushout->add_option("--map", o.map_path, "hom descriptor")->required();
  pushout->add_option("--category", job.category, "int or sat")->check(CLI::IsMember({"int", "sat"}));
  pushout->add_option("--basechange", o.basechange, "1/n");
  pushout->add_option("--level", o.level, "n");
  common(pushout);
  auto* conductor = app.add_subcommand("conductor", "conductor bounds of a pair");
  conductor->add_option("--pair", o.pair_path, "pair descriptor");
  conductor->add_option("--map", o.map_path, "hom descriptor");
  common(conductor);
  auto* koszul = app.add_subcommand("koszul", "log q-de Rham Koszul tables of affine space");
  koszul->add_option("--dim", job.dim, "number of variables");
  koszul->add_option("--prime", job.prime, "p for q = zeta_p");
  koszul->add_option("--deg-bound", job.deg_bound, "total degree bound");
  common(koszul);
  auto* verify = app.add_subcommand("verify", "re-check a certificate");
  verify->add_option("certificate", cert_path, "certificate path")->required();
  verify->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      auto r = lmon::cli::verify(lmon::cli::read_json_file(cert_path));
      if (o.format == "table") {
        std::cout << (r.ok ? "verified" : "FAILED") << "\n";
        for (const auto& p : r.problems) std::cout << "  " << p << "\n";
      } else {
        std::cout << lmon::cli::dump({{"verified", r.ok}, {"problems", r.problems}});
      }
      return r.ok ? 0 : 1;
    }
    job.command = app.get_subcommands().front()->get_name();
    job.property = property;
    if (!o.pair_path.empty()) job.pair = lmon::cli::read_json_file(o.pair_path);
    if (!o.map_path.empty()) job.map = lmon::cli::read_json_file(o.map_path);
    job.point = o.point;
    if (!o.primes.empty()) job.primes = lmon::cli::parse_primes(o.primes);
    if (!o.basechange.empty()) job.level = lmon::cli::parse_level(o.basechange);
    if (o.level > 0) job.level = o.level;
    auto r = lmon::cli::run(job);
    emit(o.format == "table" ? lmon::cli::render_table(r.certificate) : lmon::cli::dump(r.certificate), o.out);
    return r.exit_code;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 2;
  }
}
