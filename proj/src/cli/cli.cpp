#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "kstar/cli.hpp"
#include "kstar/parse.hpp"
#include "kstar/star.hpp"

namespace kstar {

using json = nlohmann::ordered_json;

namespace {

struct StarArgs {
  std::string product;
  int dimension = 2;
  std::optional<unsigned> order;
  bool commutator = false;
  bool json = false;
  std::string f;
  std::string g;
};

struct VerifyArgs {
  std::string suite;
  int dimension = 2;
  std::optional<unsigned> degree;
  std::uint64_t seed = 1;
  unsigned samples = 200;
  unsigned cutoff = 3;
  bool json = false;
};

json argv_json(const std::vector<std::string>& args) {
  json a = json::array();
  for (const auto& s : args) a.push_back(s);
  return a;
}

int run_star(const StarArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  auto kind = parse_star_kind(a.product);
  if (!kind || *kind == StarKind::custom) throw CLI::ValidationError("--product", "unknown product '" + a.product + "'");
  const int d = *kind == StarKind::su2 ? 3 : a.dimension;
  StarProduct s = build_star(*kind, d, a.order);
  Poly f = parse_poly(a.f, s.table());
  Poly g = parse_poly(a.g, s.table());
  ThetaSeries series = a.commutator ? star_commutator(s, f, g) : star_apply(s, f, g);

  if (a.json) {
    json result = json::array();
    for (const auto& [n, c] : series.coefficients()) result.push_back({{"order", n}, {"coefficient", c.to_string()}});
    json report;
    report["schema"] = kReportSchema;
    report["engine"] = kEngineVersion;
    report["command"] = "star";
    report["argv"] = argv_json(args);
    report["product"] = std::string(to_string(*kind));
    report["dimension"] = d;
    report["parameters"] = {{"order", a.order ? json(*a.order) : json(nullptr)}, {"commutator", a.commutator}};
    report["inputs"] = {{"f", f.to_string()}, {"g", g.to_string()}};
    report["result"] = result;
    report["series"] = series.to_string();
    report["pass"] = true;
    out << report.dump(2) << "\n";
    return 0;
  }
  out << "product: " << to_string(*kind) << " (d = " << d << ")\n";
  out << "f = " << f.to_string() << "\n";
  out << "g = " << g.to_string() << "\n";
  out << (a.commutator ? "[f, g] = " : "f * g = ") << series.to_string() << "\n";
  for (const auto& [n, c] : series.coefficients()) out << "  theta^" << n << ": " << c.to_string() << "\n";
  return 0;
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_detail(std::ostream& out, const std::string& key, const json& value, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (value.is_object()) {
    out << pad << key << ":\n";
    for (const auto& [k, v] : value.items()) print_detail(out, k, v, depth + 1);
  } else if (value.is_array()) {
    out << pad << key << ":" << (value.empty() ? " none" : "") << "\n";
    for (const auto& v : value) out << pad << "  " << scalar_text(v) << "\n";
  } else {
    out << pad << key << ": " << scalar_text(value) << "\n";
  }
}

int run_verify(const VerifyArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  SuiteOptions o;
  o.dimension = a.suite == "su2-reduction" ? 3 : a.dimension;
  o.degree = a.degree.value_or(a.suite == "su2-reduction" ? 3u : 4u);
  o.seed = a.seed;
  o.samples = a.samples;
  o.cutoff = a.cutoff;
  SuiteResult r = run_suite(a.suite, o);

  if (a.json) {
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name},
                        {"pass", c.pass},
                        {"checked", c.checked},
                        {"witness", c.pass ? json(nullptr) : json(c.witness)}});
    }
    json report;
    report["schema"] = kReportSchema;
    report["engine"] = kEngineVersion;
    report["command"] = "verify";
    report["argv"] = argv_json(args);
    report["suite"] = r.suite;
    report["dimension"] = o.dimension;
    report["parameters"] = {{"degree", o.degree}, {"seed", o.seed}, {"samples", o.samples}, {"cutoff", o.cutoff}};
    report["checks"] = checks;
    report["details"] = r.details;
    report["pass"] = r.pass();
    out << report.dump(2) << "\n";
  } else {
    out << "suite " << r.suite << " (d = " << o.dimension << ")\n";
    for (const auto& c : r.checks) {
      out << (c.pass ? "  PASS  " : "  FAIL  ") << c.name << " (" << c.checked << " checked)";
      if (!c.pass) out << "\n        " << c.witness;
      out << "\n";
    }
    for (const auto& [key, value] : r.details.items()) print_detail(out, key, value, 0);
    out << (r.pass() ? "result: pass" : "result: FAIL") << "\n";
  }
  return r.pass() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact kappa-Minkowski star products and their checks", "kstar"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kEngineVersion);

  StarArgs sa;
  auto* star = app.add_subcommand("star", "Evaluate f * g (or [f, g]) as a theta series");
  star->add_option("--product,-p", sa.product, "moyal, wv, kappa, su2, jordanian or jordanian-rs")->required();
  auto* star_dim = star->add_option("-d,--dimension", sa.dimension, "Spatial dimension")->envname("KSTAR_DIM")->check(CLI::Range(1, 8));
  star->add_option("--order", sa.order, "Drop theta orders above N");
  star->add_flag("--commutator", sa.commutator, "Print f * g - g * f");
  star->add_flag("--json", sa.json, "Machine-readable report");
  star->add_option("f", sa.f, "Left factor")->required();
  star->add_option("g", sa.g, "Right factor")->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", va.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  auto* verify_dim = verify->add_option("-d,--dimension", va.dimension, "Spatial dimension")->envname("KSTAR_DIM")->check(CLI::Range(1, 8));
  verify->add_option("--degree", va.degree, "Maximal degree (4; 3 for su2-reduction)");
  verify->add_option("--seed", va.seed, "Seed for random sweeps");
  verify->add_option("--samples", va.samples, "Random samples per check");
  verify->add_option("--cutoff", va.cutoff, "Fock occupation cutoff M")->check(CLI::Range(2u, 12u));
  verify->add_flag("--json", va.json, "Machine-readable report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  // CLI11 skips an environment value that fails validation; refuse it instead.
  if (const char* env = std::getenv("KSTAR_DIM"); env != nullptr && *env != '\0') {
    auto* dim = star->parsed() ? star_dim : verify_dim;
    if (dim->count() == 0) {
      err << "KSTAR_DIM: expected an integer in [1, 8], found '" << env << "'\n";
      return 2;
    }
  }

  try {
    if (star->parsed()) return run_star(sa, args, out);
    return run_verify(va, args, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace kstar
