#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "kstar/cli.hpp"

using namespace kstar;
using nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Sets KSTAR_DIM for one scope.
struct DimEnv {
  explicit DimEnv(const char* value) { ::setenv("KSTAR_DIM", value, 1); }
  ~DimEnv() { ::unsetenv("KSTAR_DIM"); }
};

}  // namespace

TEST_CASE("star command examples") {
  Run c = run({"star", "-p", "kappa", "-d", "3", "x0", "x2", "--commutator"});
  CHECK(c.code == 0);
  CHECK(c.out.find("theta^1: x2") != std::string::npos);
  CHECK(c.out.find("theta^0") == std::string::npos);

  Run wv = run({"star", "-p", "wv", "-d", "1", "z1", "zb1", "--json"});
  REQUIRE(wv.code == 0);
  ordered_json j = ordered_json::parse(wv.out);
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["engine"] == kEngineVersion);
  CHECK(j["product"] == "wv");
  REQUIRE(j["result"].size() == 2);
  CHECK(j["result"][0]["coefficient"] == "z1*zb1");
  CHECK(j["result"][1]["order"] == 1);
  CHECK(j["result"][1]["coefficient"] == "1");
  CHECK(j["pass"] == true);

  Run unit = run({"star", "-p", "kappa", "-d", "1", "1", "x1"});
  CHECK(unit.code == 0);
  CHECK(unit.out.find("f * g = x1\n") != std::string::npos);

  Run capped = run({"star", "-p", "kappa", "-d", "1", "x0^2", "x1", "--order", "1", "--json"});
  REQUIRE(capped.code == 0);
  CHECK(ordered_json::parse(capped.out)["result"].size() == 2);
}

TEST_CASE("su2 always runs in three dimensions") {
  Run r = run({"star", "-p", "su2", "x1", "x2", "--commutator", "--json"});
  REQUIRE(r.code == 0);
  ordered_json j = ordered_json::parse(r.out);
  CHECK(j["dimension"] == 3);
}

TEST_CASE("usage and parse errors exit with 2") {
  Run bad_var = run({"star", "-p", "kappa", "-d", "2", "x1", "x5"});
  CHECK(bad_var.code == 2);
  CHECK(bad_var.err.find("line 1, column 1") != std::string::npos);
  CHECK(bad_var.out.empty());
  CHECK(run({"star", "-p", "nope", "x0", "x1"}).code == 2);
  CHECK(run({"star", "x0", "x1"}).code == 2);
  CHECK(run({"star", "-p", "kappa", "-d", "9", "x0", "x1"}).code == 2);
  CHECK(run({"star", "-p", "kappa", "x0"}).code == 2);
  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"verify", "fock", "--cutoff", "1"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
  CHECK(run({"verify", "--help"}).code == 0);
}

TEST_CASE("verify exit codes follow the checks") {
  Run ok = run({"verify", "reduction", "-d", "1", "--degree", "3"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("result: pass") != std::string::npos);
  Run red = run({"verify", "obstruction", "-d", "1", "--json"});
  CHECK(red.code == 1);
  ordered_json j = ordered_json::parse(red.out);
  CHECK(j["pass"] == false);
  bool some_failed = false;
  for (const auto& c : j["checks"]) {
    if (c["pass"] == false) {
      some_failed = true;
      CHECK(c["witness"].is_string());
    } else {
      CHECK(c["witness"].is_null());
    }
  }
  CHECK(some_failed);
}

TEST_CASE("reports are deterministic") {
  std::vector<std::string> args{"verify", "associativity", "-d", "1", "--samples", "5", "--seed", "7", "--json"};
  Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  ordered_json j = ordered_json::parse(a.out);
  CHECK(j["parameters"]["seed"] == 7);
  CHECK(j["parameters"]["samples"] == 5);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"schema", "engine", "command", "argv", "suite", "dimension", "parameters",
                                         "checks", "details", "pass"});
  Run other = run({"verify", "associativity", "-d", "1", "--samples", "5", "--seed", "8", "--json"});
  CHECK(other.out != a.out);
}

TEST_CASE("KSTAR_DIM sets the default dimension") {
  {
    DimEnv env("3");
    Run r = run({"star", "-p", "kappa", "x3", "x0", "--json"});
    REQUIRE(r.code == 0);
    CHECK(ordered_json::parse(r.out)["dimension"] == 3);
    // an explicit flag wins
    Run flag = run({"star", "-p", "kappa", "-d", "1", "x3", "x0"});
    CHECK(flag.code == 2);
  }
  {
    DimEnv env("12");
    CHECK(run({"star", "-p", "kappa", "x0", "x1"}).code == 2);
    CHECK(run({"star", "-p", "kappa", "-d", "1", "x0", "x1"}).code == 0);
  }
  {
    DimEnv env("two");
    CHECK(run({"verify", "wedge"}).code == 2);
  }
  Run plain = run({"star", "-p", "kappa", "x1", "x0", "--json"});
  REQUIRE(plain.code == 0);
  CHECK(ordered_json::parse(plain.out)["dimension"] == 2);
}
