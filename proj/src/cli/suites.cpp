#include <algorithm>
#include <functional>
#include <map>

#include "kstar/cli.hpp"
#include "kstar/cyclicity.hpp"
#include "kstar/fock.hpp"
#include "kstar/realization.hpp"
#include "kstar/star.hpp"
#include "kstar/twist.hpp"

namespace kstar {

using json = nlohmann::ordered_json;

Poly random_poly(std::mt19937_64& rng, const TablePtr& table, unsigned max_degree, unsigned max_terms) {
  Poly p(table);
  const auto n = table->size();
  const auto terms = 1 + rng() % std::max(1u, max_terms);
  for (std::uint64_t t = 0; t < terms; ++t) {
    MultiIndex m(n, 0);
    const auto degree = rng() % (max_degree + 1);
    for (std::uint64_t j = 0; j < degree; ++j) ++m[rng() % n];
    const long num = static_cast<long>(rng() % 7) - 3;
    const long den = 1 + static_cast<long>(rng() % 3);
    const long im = rng() % 3 == 0 ? static_cast<long>(rng() % 5) - 2 : 0;
    p.add_term(m, Scalar(Scalar::fraction(num, den).re(), Rational(im)));
  }
  return p;
}

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

CheckResult from_verdict(std::string name, const Verdict& v) {
  return {std::move(name), v.holds, v.checked, v.holds ? "" : v.describe()};
}

std::string pair_context(const Poly& f, const Poly& g) { return "f = " + f.to_string() + ", g = " + g.to_string(); }

// Every pair of monomials with deg a + deg b <= max_degree.
void for_monomial_pairs(const TablePtr& table, unsigned max_degree,
                        const std::function<void(const Poly&, const Poly&)>& visit) {
  auto monomials = monomials_up_to(table->size(), max_degree);
  for (const auto& a : monomials) {
    for (const auto& b : monomials) {
      if (total_degree(a) + total_degree(b) > max_degree) continue;
      visit(Poly::monomial(table, a), Poly::monomial(table, b));
    }
  }
}

json strings(const std::vector<std::string>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

json condition_list(const ConditionSet& c) {
  json a = json::array();
  for (const auto& cond : c.conditions) a.push_back(cond.to_string());
  return a;
}

json candidate_json(const CandidateReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"condition", e.condition}, {"residual", e.residual}, {"vanishes", e.vanishes}});
  }
  return {{"candidate", r.name}, {"order", r.order}, {"pass", r.passes}, {"conditions", entries}};
}

std::vector<std::string> sorted_strings(const ConditionSet& c) {
  std::vector<std::string> v;
  for (const auto& cond : c.conditions) v.push_back(cond.to_string());
  std::sort(v.begin(), v.end());
  return v;
}

SuiteResult reduction_suite(const SuiteOptions& o) {
  SuiteResult r{"reduction", {}, json::object()};
  auto table = VarTable::spacetime(o.dimension);
  Verdict total;
  for_monomial_pairs(table, o.degree, [&](const Poly& f, const Poly& g) {
    accumulate(total, verify_reduction_kappa(f, g, o.dimension), pair_context(f, g));
  });
  r.checks.push_back(from_verdict("pullback(f *kappa g) = pullback(f) *wv pullback(g)", total));
  Realization real = Realization::kappa(o.dimension);
  json images = json::array();
  for (const auto& [slot, image] : real.images()) images.push_back((*table)[slot].name + " -> " + image.to_string());
  r.details["realization"] = images;
  return r;
}

SuiteResult lemma2_suite(const SuiteOptions& o) {
  SuiteResult r{"lemma2", {}, json::object()};
  auto table = VarTable::spacetime(o.dimension);
  r.checks.push_back(from_verdict("twist product = kappa product", verify_lemma2(o.dimension, o.degree)));

  StarProduct kappa = build_star(StarKind::kappa, o.dimension);
  Verdict direct;
  for_monomial_pairs(table, o.degree, [&](const Poly& f, const Poly& g) {
    accumulate(direct, compare_series(twist_act(TwistKind::jordanian, f, g), star_apply(kappa, f, g)),
               pair_context(f, g));
  });
  r.checks.push_back(from_verdict("twist acting on f (x) g = kappa product", direct));

  CheckResult falling{"E(E-1)...(E-n+1) = sum n!/alpha! x^alpha d^alpha, n <= 6", true, 0, ""};
  for (unsigned n = 0; n <= 6; ++n) {
    ++falling.checked;
    if (falling.pass && !(falling_factorial_op(table, n) == pure_order_op(table, n))) {
      falling.pass = false;
      falling.witness = "n = " + std::to_string(n) + ": " + falling_factorial_op(table, n).to_string();
    }
  }
  r.checks.push_back(falling);
  r.details["first order"] = build_twist(TwistKind::jordanian, o.dimension, 1).terms.part(1).to_string();
  return r;
}

SuiteResult associativity_suite(const SuiteOptions& o) {
  SuiteResult r{"associativity", {}, json::object()};
  std::mt19937_64 rng(o.seed);
  json dims = json::object();
  for (StarKind kind : {StarKind::moyal, StarKind::wick_voros, StarKind::kappa, StarKind::su2,
                        StarKind::jordanian, StarKind::jordanian_rs}) {
    StarProduct s = build_star(kind, o.dimension);
    Verdict total;
    for (unsigned k = 0; k < o.samples; ++k) {
      Poly f = random_poly(rng, s.table(), o.degree);
      Poly g = random_poly(rng, s.table(), o.degree);
      Poly h = random_poly(rng, s.table(), o.degree);
      accumulate(total, verify_associativity(s, f, g, h), "triple " + std::to_string(k));
    }
    r.checks.push_back(from_verdict("(f * g) * h = f * (g * h) for " + std::string(to_string(kind)), total));
    dims[std::string(to_string(kind))] = s.dimension();
  }
  r.details["dimension"] = dims;
  r.details["su2 comparison"] = "modulo (x0)^2 = (x1)^2 + (x2)^2 + (x3)^2";
  return r;
}

SuiteResult realizations_suite(const SuiteOptions& o) {
  SuiteResult r{"realizations", {}, json::object()};
  auto table = VarTable::spacetime(o.dimension);
  std::mt19937_64 rng(o.seed);
  LeftRightRealizations ops = left_right_realizations(o.dimension);
  Verdict agree;
  for (unsigned k = 0; k < o.samples; ++k) {
    Poly f = random_poly(rng, table, o.degree);
    accumulate(agree, verify_left_right(ops, f), "sample " + std::to_string(k));
  }
  r.checks.push_back(from_verdict("x_L f = x * f and x_R f = f * x", agree));
  r.checks.push_back(from_verdict("[x_L^0, x_L^k] = theta x_L^k", verify_realization_commutators(ops.left, 1)));
  r.checks.push_back(from_verdict("[x_R^0, x_R^k] = -theta x_R^k", verify_realization_commutators(ops.right, -1)));
  json left = json::array();
  json right = json::array();
  for (std::size_t mu = 0; mu < table->size(); ++mu) {
    left.push_back(ops.left[mu].to_string());
    right.push_back(ops.right[mu].to_string());
  }
  r.details["left"] = left;
  r.details["right"] = right;
  return r;
}

SuiteResult wedge_suite(const SuiteOptions& o) {
  SuiteResult r{"wedge", {}, json::object()};
  auto table = VarTable::spacetime(o.dimension);
  CheckResult c{"dx^mu ^* dx^nu = dx^mu ^ dx^nu through theta^" + std::to_string(o.degree), true, 0, ""};
  for (std::size_t mu = 0; mu < table->size(); ++mu) {
    for (std::size_t nu = 0; nu < table->size(); ++nu) {
      ++c.checked;
      WedgeResult w = wedge_star(mu, nu, o.dimension, o.degree);
      if (c.pass && !w.matches_undeformed) {
        c.pass = false;
        c.witness = "mu = " + std::to_string(mu) + ", nu = " + std::to_string(nu);
        for (std::size_t n = 0; n < w.by_order.size(); ++n) {
          c.witness += "; theta^" + std::to_string(n) + ": " + w.by_order[n].to_string();
        }
      }
    }
  }
  r.checks.push_back(c);
  return r;
}

// Integration by parts keeps box integrals, on random low-degree h, f, g.
Verdict integral_check(const IBPExpression& e, std::mt19937_64& rng, unsigned samples) {
  Verdict total;
  for (unsigned k = 0; k < samples; ++k) {
    Poly h = random_poly(rng, e.table(), 2, 2);
    Poly f = random_poly(rng, e.table(), 2, 2);
    Poly g = random_poly(rng, e.table(), 2, 2);
    accumulate(total, verify_ibp_integral(e, h, f, g), "sample " + std::to_string(k));
  }
  return total;
}

SuiteResult measure_suite(const SuiteOptions& o) {
  SuiteResult r{"measure", {}, json::object()};
  const int d = o.dimension;
  StarProduct kappa = build_star(StarKind::kappa, d);
  StarProduct rs = build_star(StarKind::jordanian_rs, d);
  IBPExpression integrand = commutator_integrand(kappa, 1);
  ConditionSet conditions = measure_conditions(kappa, 1);
  ConditionSet expected = first_order_rules(d);

  CheckResult derived{"order-1 conditions = {h_x0, x^k h_xk + d h}", true, 1, ""};
  if (sorted_strings(conditions) != sorted_strings(expected)) {
    derived.pass = false;
    derived.witness = conditions.to_string();
  }
  r.checks.push_back(derived);

  ConditionSet rs_conditions = measure_conditions(rs, 1);
  CheckResult same{"jordanian-rs gives the same order-1 conditions", true, 1, ""};
  if (sorted_strings(rs_conditions) != sorted_strings(conditions)) {
    same.pass = false;
    same.witness = rs_conditions.to_string();
  }
  r.checks.push_back(same);

  r.checks.push_back(from_verdict("integrating onto g flips the sign", cross_check_sides(integrand)));
  std::mt19937_64 rng(o.seed);
  const unsigned integral_samples = d <= 2 ? 3 : 1;
  r.checks.push_back(from_verdict("integration by parts keeps the integral", integral_check(integrand, rng, integral_samples)));

  json candidates = json::array();
  for (const auto& m : standard_candidates(d)) {
    CandidateReport rep = check_candidate(m, kappa, 1);
    CheckResult c{m.name() + " satisfies the order-1 conditions", rep.passes, rep.entries.size(), ""};
    for (const auto& e : rep.entries) {
      if (!e.vanishes && c.witness.empty()) c.witness = e.condition + " leaves " + e.residual;
    }
    r.checks.push_back(c);
    candidates.push_back(candidate_json(rep));
  }
  r.details["integrand"] = integrand.to_string();
  r.details["conditions"] = condition_list(conditions);
  r.details["candidates"] = candidates;
  return r;
}

SuiteResult obstruction_suite(const SuiteOptions& o) {
  SuiteResult r{"obstruction", {}, json::object()};
  const int d = o.dimension;
  ConditionSet rules = first_order_rules(d);
  json per_product = json::object();
  std::mt19937_64 rng(o.seed);
  for (StarKind kind : {StarKind::kappa, StarKind::jordanian_rs}) {
    StarProduct s = build_star(kind, d);
    const std::string name(to_string(kind));
    IBPExpression integrand = commutator_integrand(s, 2);
    ConditionSet conditions = measure_conditions(s, 2);
    ConditionSet reduced = reduce_with_rules(conditions, rules);
    auto c = forcing_constant(reduced);
    CheckResult forced{name + ": order-2 conditions reduce to c h = 0 with c != 0", c.has_value(), conditions.conditions.size(), ""};
    if (!c) {
      forced.witness = reduced.empty() ? "every order-2 condition reduces to 0 under the order-1 rules"
                                       : "reduced conditions: " + reduced.to_string();
    }
    r.checks.push_back(forced);
    if (kind == StarKind::kappa) {
      r.checks.push_back(from_verdict("integrating onto g flips the sign", cross_check_sides(integrand)));
      r.checks.push_back(from_verdict("integration by parts keeps the integral",
                                      integral_check(integrand, rng, d <= 2 ? 2 : 1)));
    }
    json flagged = json::array();
    for (const auto& cond : reduced.conditions) {
      if (cond.flagged) flagged.push_back(cond.to_string());
    }
    per_product[name] = {{"integrand", integrand.to_string()},
                         {"conditions", condition_list(conditions)},
                         {"reduced", condition_list(reduced)},
                         {"forcing constant", c ? json(c->to_string()) : json(nullptr)},
                         {"unreduced", flagged}};
  }
  StarProduct kappa = build_star(StarKind::kappa, d);
  json candidates = json::array();
  for (const auto& m : standard_candidates(d)) {
    CandidateReport rep = check_candidate(m, kappa, 2);
    CheckResult c{m.name() + " fails at order 2", !rep.passes, rep.entries.size(), ""};
    if (rep.passes) c.witness = "every order-2 residual vanishes";
    r.checks.push_back(c);
    candidates.push_back(candidate_json(rep));
  }
  r.details["products"] = per_product;
  r.details["candidates"] = candidates;
  return r;
}

SuiteResult fock_suite(const SuiteOptions& o) {
  SuiteResult r{"fock", {}, json::object()};
  FockReport rep = fock_check(o.dimension, o.cutoff);
  json boundary = json::object();
  for (const auto& c : rep.checks) {
    CheckResult check{c.identity + " below the cutoff", c.holds_below_cutoff && c.failures_at_top, rep.states, ""};
    if (!check.pass) check.witness = "fails on " + strings(c.failing_states).dump();
    r.checks.push_back(check);
    boundary[c.identity] = strings(c.failing_states);
  }
  r.details["states"] = rep.states;
  r.details["cutoff"] = rep.cutoff;
  r.details["boundary failures"] = boundary;
  return r;
}

SuiteResult su2_suite(const SuiteOptions& o) {
  SuiteResult r{"su2-reduction", {}, json::object()};
  auto table = VarTable::spacetime(3);
  StarProduct s = build_star(StarKind::su2, 3);
  Verdict brackets;
  const int cyclic[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  for (const auto& ijk : cyclic) {
    Poly xi = Poly::variable(table, static_cast<std::size_t>(ijk[0]));
    Poly xj = Poly::variable(table, static_cast<std::size_t>(ijk[1]));
    ThetaSeries expected(table);
    expected.add_to(1, Poly::variable(table, static_cast<std::size_t>(ijk[2])) * Scalar::i());
    accumulate(brackets,
               compare_series(star_commutator(s, xi, xj), expected, [&s](const Poly& p) { return s.normal_form(p); }),
               "[x" + std::to_string(ijk[0]) + ", x" + std::to_string(ijk[1]) + "]");
  }
  r.checks.push_back(from_verdict("[x^i, x^j] = i theta eps_ijk x^k", brackets));
  Verdict total;
  for_monomial_pairs(table, o.degree, [&](const Poly& f, const Poly& g) {
    accumulate(total, verify_reduction_su2(f, g), pair_context(f, g));
  });
  r.checks.push_back(from_verdict("pullback(f *su2 g) = pullback(f) *wv pullback(g)", total));
  Realization real = Realization::su2();
  json images = json::array();
  for (const auto& [slot, image] : real.images()) images.push_back((*table)[slot].name + " -> " + image.to_string());
  r.details["realization"] = images;
  return r;
}

using SuiteFn = SuiteResult (*)(const SuiteOptions&);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites = {
      {"reduction", reduction_suite},   {"lemma2", lemma2_suite},
      {"associativity", associativity_suite}, {"realizations", realizations_suite},
      {"wedge", wedge_suite},           {"measure", measure_suite},
      {"obstruction", obstruction_suite}, {"fock", fock_suite},
      {"su2-reduction", su2_suite},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"reduction", "lemma2",      "associativity",
                                                 "realizations", "wedge",    "measure",
                                                 "obstruction",  "fock",     "su2-reduction"};
  return names;
}

SuiteResult run_suite(const std::string& suite, const SuiteOptions& options) {
  auto it = registry().find(suite);
  if (it == registry().end()) throw Error("unknown suite '" + suite + "'");
  return it->second(options);
}

}  // namespace kstar
