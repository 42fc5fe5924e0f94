// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "kstar/cli.hpp"
#include "kstar/star.hpp"
#include "kstar/twist.hpp"

using namespace kstar;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void fail(const std::string& why) {
    if (pass) note = why;
    pass = false;
  }
};

// Every check of every listed suite run must pass.
Outcome suites(const std::string& name, const std::vector<SuiteOptions>& runs) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& opts : runs) {
    SuiteResult r = run_suite(name, opts);
    for (const auto& c : r.checks) {
      checked += c.checked;
      if (!c.pass) o.fail("d = " + std::to_string(opts.dimension) + ": " + c.name + ": " + c.witness);
    }
  }
  if (o.pass) o.note = std::to_string(checked) + " instances";
  return o;
}

SuiteOptions at(int d, unsigned degree = 4) {
  SuiteOptions o;
  o.dimension = d;
  o.degree = degree;
  return o;
}

// Series equal to theta^1 * c.
bool first_order_only(const ThetaSeries& s, const Poly& c) {
  ThetaSeries expected(c.table());
  expected.add_to(1, c);
  return s == expected;
}

Outcome canonical_commutators() {
  Outcome o;
  for (StarKind kind : {StarKind::wick_voros, StarKind::moyal}) {
    for (int d = 1; d <= 4; ++d) {
      StarProduct s = build_star(kind, d);
      auto t = s.table();
      for (int i = 1; i <= d; ++i) {
        for (int j = 1; j <= d; ++j) {
          Poly z = Poly::variable(t, "z" + std::to_string(i));
          Poly zb = Poly::variable(t, "zb" + std::to_string(j));
          Poly expected = Poly::constant(t, i == j ? 1 : 0);
          if (!first_order_only(star_commutator(s, z, zb), expected)) {
            o.fail(std::string(to_string(kind)) + " d = " + std::to_string(d) + ": [z" + std::to_string(i) + ", zb" +
                   std::to_string(j) + "]");
          }
          Poly zj = Poly::variable(t, "z" + std::to_string(j));
          if (!star_commutator(s, z, zj).is_zero()) o.fail(std::string(to_string(kind)) + ": [z, z] != 0");
        }
      }
    }
  }
  return o;
}

Outcome kappa_relations() {
  Outcome o;
  for (int d = 1; d <= 4; ++d) {
    StarProduct s = build_star(StarKind::kappa, d);
    auto t = s.table();
    Poly x0 = Poly::variable(t, 0);
    for (int i = 1; i <= d; ++i) {
      Poly xi = Poly::variable(t, static_cast<std::size_t>(i));
      if (!first_order_only(star_commutator(s, x0, xi), xi)) o.fail("[x0, x" + std::to_string(i) + "]");
      for (int j = 1; j <= d; ++j) {
        if (!star_commutator(s, xi, Poly::variable(t, static_cast<std::size_t>(j))).is_zero()) {
          o.fail("[x" + std::to_string(i) + ", x" + std::to_string(j) + "] != 0");
        }
      }
    }
  }
  return o;
}

Outcome lemma2() {
  Outcome o = suites("lemma2", {at(1), at(2), at(3)});
  for (int d = 1; d <= 3; ++d) {
    auto t = VarTable::spacetime(d);
    for (unsigned n = 0; n <= 6; ++n) {
      if (!(falling_factorial_op(t, n) == pure_order_op(t, n))) o.fail("falling factorial n = " + std::to_string(n));
    }
  }
  return o;
}

Outcome fock() {
  std::vector<SuiteOptions> runs;
  for (int d : {1, 2}) {
    for (unsigned m : {3u, 5u}) {
      SuiteOptions o = at(d);
      o.cutoff = m;
      runs.push_back(o);
    }
  }
  return suites("fock", runs);
}

std::string run_case(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  run_cli(args, out, err);
  return out.str();
}

Outcome goldens() {
  Outcome o;
  std::size_t cases = 0;
  for (const auto& entry : fs::directory_iterator(KSTAR_GOLDEN_DIR)) {
    if (entry.path().extension() != ".args") continue;
    std::vector<std::string> args;
    std::ifstream in(entry.path());
    for (std::string line; std::getline(in, line);) args.push_back(line);
    fs::path json = entry.path();
    json.replace_extension(".json");
    std::ifstream golden(json, std::ios::binary);
    std::string expected((std::istreambuf_iterator<char>(golden)), std::istreambuf_iterator<char>());
    std::string first = run_case(args);
    std::string second = run_case(args);
    if (first != second) o.fail(json.filename().string() + ": two runs differ");
    if (first != expected) o.fail(json.filename().string() + ": differs from the golden file");
    ++cases;
  }
  if (cases == 0) o.fail("no golden cases");
  if (o.pass) o.note = std::to_string(cases) + " golden reports";
  return o;
}

}  // namespace

int main() {
  SuiteOptions assoc = at(2);
  assoc.samples = 200;
  SuiteOptions su2 = at(3, 3);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"canonical commutators for wv and moyal, d <= 4", canonical_commutators},
      {"kappa-Minkowski relations, d <= 4", kappa_relations},
      {"pullback reduction on all monomial pairs of degree <= 4, d = 1..3",
       [] { return suites("reduction", {at(1), at(2), at(3)}); }},
      {"twist product = kappa product; falling factorial for n <= 6", lemma2},
      {"associativity on 200 random triples of degree <= 4", [&] { return suites("associativity", {assoc}); }},
      {"left/right realizations and their commutators", [] { return suites("realizations", {at(1), at(2), at(3)}); }},
      {"su(2) relations and pullback reduction, degree <= 3", [&] { return suites("su2-reduction", {su2}); }},
      {"deformed wedge of coordinate one-forms through theta^4",
       [] { return suites("wedge", {at(1), at(2), at(3), at(4)}); }},
      {"order-1 measure conditions and candidates, d = 1..4",
       [] { return suites("measure", {at(1), at(2), at(3), at(4)}); }},
      {"order-2 obstruction c*h = 0, d = 1..4", [] { return suites("obstruction", {at(1), at(2), at(3), at(4)}); }},
      {"Fock realization below the cutoff, d in {1, 2}, M in {3, 5}", fock},
      {"golden JSON reports are byte-stable", goldens},
  };

  int failed = 0;
  int n = 0;
  for (const auto& [title, check] : criteria) {
    ++n;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << n << ". " << title;
    if (!o.note.empty()) std::cout << " (" << o.note << ")";
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
