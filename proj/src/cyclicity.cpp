#include "kstar/cyclicity.hpp"

#include <algorithm>
#include <utility>

namespace kstar {

namespace {

// Sum of scalar * symbol-product terms, printed like Poly::to_string.
std::string join_terms(const std::vector<std::pair<Scalar, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [c, sym] : terms) {
    std::string term;
    if (sym.empty()) {
      term = c.to_string();
    } else if (c.is_one()) {
      term = sym;
    } else if (c == Scalar(-1)) {
      term = "-" + sym;
    } else {
      term = c.to_string() + "*" + sym;
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

std::string word_symbol(const VarTable& table, const char* base, const MultiIndex& w) {
  std::string s = base;
  if (total_degree(w) == 0) return s;
  s += "_";
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::uint32_t r = 0; r < w[k]; ++r) s += table[k].name;
  }
  return s;
}

void expand_into(std::vector<std::pair<Scalar, std::string>>& out, const Poly& c,
                 const std::string& tail) {
  for (const auto& [m, s] : c.terms()) {
    std::string mono = monomial_to_string(*c.table(), m);
    out.emplace_back(s, mono.empty() ? tail : mono + "*" + tail);
  }
}

MultiIndex raised(MultiIndex m, std::size_t slot) {
  ++m[slot];
  return m;
}

MultiIndex lowered(MultiIndex m, std::size_t slot) {
  --m[slot];
  return m;
}

unsigned spatial_degree(const MultiIndex& m) { return total_degree(m) - m[0]; }

DiffOp euler_rule(const TablePtr& table) {
  DiffOp r = DiffOp::identity(table) * Scalar(table->dimension());
  for (std::size_t k = 1; k < table->size(); ++k) {
    r.add_term(unit_index(table->size(), k), Poly::variable(table, k));
  }
  return r;
}

MultiIndex condition_content(const DiffOp& expr) {
  std::optional<MultiIndex> content;
  for (const auto& [alpha, c] : expr.terms()) {
    MultiIndex m = monomial_content(c);
    if (!content) {
      content = m;
    } else {
      for (std::size_t k = 0; k < m.size(); ++k) (*content)[k] = std::min((*content)[k], m[k]);
    }
  }
  return content.value_or(MultiIndex(expr.table()->size(), 0));
}

DiffOp divide_content(const DiffOp& expr) {
  MultiIndex content = condition_content(expr);
  DiffOp r(expr.table());
  for (const auto& [alpha, c] : expr.terms()) r.add_term(alpha, divide_by_monomial(c, content));
  return r;
}

void push_condition(ConditionSet& set, const std::vector<MultiIndex>& words, DiffOp expr, bool flagged) {
  for (auto& existing : set.conditions) {
    if (existing.expr == expr) {
      existing.words.insert(existing.words.end(), words.begin(), words.end());
      return;
    }
  }
  set.conditions.push_back({words, std::move(expr), flagged});
}

// Expanded form of a condition: (monomial, h-word) -> coefficient.
using FlatCondition = std::map<std::pair<MultiIndex, MultiIndex>, Scalar>;

void flat_add(FlatCondition& f, const MultiIndex& m, const MultiIndex& h, const Scalar& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(m, h);
  auto it = f.find(key);
  if (it == f.end()) {
    f.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) f.erase(it);
}

// Reduce modulo d0 h = 0 and x^k d_k d^beta h = -(d + |beta|) d^beta h.
// The term x^(m) d^(a) h with m_1, a_1 > 0 is always the one rewritten, so the
// x1-exponent drops at every step and the normal form is unique.
DiffOp reduce_one(const DiffOp& expr, bool use_d0, bool use_euler) {
  const auto& table = expr.table();
  const auto n = table->size();
  const int d = table->dimension();
  FlatCondition flat;
  for (const auto& [alpha, c] : expr.terms()) {
    if (use_d0 && alpha[0] > 0) continue;
    for (const auto& [m, s] : c.terms()) flat_add(flat, m, alpha, s);
  }
  while (use_euler) {
    auto it = std::find_if(flat.begin(), flat.end(),
                           [](const auto& t) { return t.first.first[1] > 0 && t.first.second[1] > 0; });
    if (it == flat.end()) break;
    auto [m, a] = it->first;
    Scalar c = it->second;
    flat.erase(it);
    MultiIndex m1 = lowered(m, 1);
    MultiIndex a1 = lowered(a, 1);
    for (std::size_t k = 2; k < n; ++k) flat_add(flat, raised(m1, k), raised(a1, k), -c);
    flat_add(flat, m1, a1, -c * Scalar(d + static_cast<long>(spatial_degree(a1))));
  }
  DiffOp r(table);
  for (const auto& [key, c] : flat) r.add_term(key.second, Poly::monomial(table, key.first, c));
  return r;
}

using PowerForm = std::map<unsigned, Poly>;

}  // namespace

// ---------------------------------------------------------------------------
// IBPExpression

IBPExpression::IBPExpression(TablePtr table, unsigned order) : table_(std::move(table)), order_(order) {}

void IBPExpression::add_term(const MultiIndex& h, const MultiIndex& f, const MultiIndex& g, const Poly& c) {
  if (c.is_zero()) return;
  Key key{h, f, g};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

IBPExpression& IBPExpression::operator+=(const IBPExpression& o) {
  require_same_table(table_, o.table_, "integrand sum");
  for (const auto& [k, c] : o.terms_) add_term(k.h, k.f, k.g, c);
  return *this;
}

IBPExpression& IBPExpression::operator-=(const IBPExpression& o) {
  require_same_table(table_, o.table_, "integrand difference");
  for (const auto& [k, c] : o.terms_) add_term(k.h, k.f, k.g, -c);
  return *this;
}

IBPExpression IBPExpression::operator-() const {
  IBPExpression r(table_, order_);
  r -= *this;
  return r;
}

std::string IBPExpression::to_string() const {
  std::vector<std::pair<Scalar, std::string>> out;
  for (const auto& [k, c] : terms_) {
    std::string tail = word_symbol(*table_, "h", k.h) + "*" + word_symbol(*table_, "f", k.f) + "*" +
                       word_symbol(*table_, "g", k.g);
    expand_into(out, c, tail);
  }
  return join_terms(out);
}

IBPExpression commutator_integrand(const StarProduct& s, unsigned order) {
  if (!s.table()->is_spacetime()) {
    throw Error("commutator_integrand: '" + std::string(to_string(s.kind())) +
                "' does not act on spacetime functions");
  }
  IBPExpression e(s.table(), order);
  if (order == 0) return e;
  const MultiIndex none(s.table()->size(), 0);
  const BiDiffOp op = s.order(order);
  for (const auto& [key, mid] : op.terms()) {
    e.add_term(none, key.left, key.right, mid);
    e.add_term(none, key.right, key.left, -mid);
  }
  return e;
}

IBPExpression ibp_normalize(const IBPExpression& e, IbpSide off) {
  const auto& table = e.table();
  IBPExpression done(table, e.order());
  IBPExpression pending = e;
  while (!pending.is_zero()) {
    IBPExpression next(table, e.order());
    for (const auto& [k, c] : pending.terms()) {
      const MultiIndex& w = off == IbpSide::f ? k.f : k.g;
      auto it = std::find_if(w.begin(), w.end(), [](std::uint32_t p) { return p > 0; });
      if (it == w.end()) {
        done.add_term(k.h, k.f, k.g, c);
        continue;
      }
      auto mu = static_cast<std::size_t>(it - w.begin());
      // c d^h h d^(w) X d^v Y -> -d_mu(c d^h h d^v Y) d^(w - e_mu) X
      MultiIndex rest = lowered(w, mu);
      const MultiIndex& other = off == IbpSide::f ? k.g : k.f;
      auto add = [&](const MultiIndex& h, const MultiIndex& o, const Poly& coeff) {
        if (off == IbpSide::f) {
          next.add_term(h, rest, o, coeff);
        } else {
          next.add_term(h, o, rest, coeff);
        }
      };
      add(k.h, other, -partial(c, mu));
      add(raised(k.h, mu), other, -c);
      add(k.h, raised(other, mu), -c);
    }
    pending = std::move(next);
  }
  return done;
}

std::map<MultiIndex, DiffOp, GrlexGreater> group_by_word(const IBPExpression& normalized) {
  bool f_free = true;
  bool g_free = true;
  for (const auto& [k, c] : normalized.terms()) {
    if (total_degree(k.f) > 0) f_free = false;
    if (total_degree(k.g) > 0) g_free = false;
  }
  if (!f_free && !g_free) throw Error("expression is not integrated by parts onto one side");
  const bool by_g = f_free;
  std::map<MultiIndex, DiffOp, GrlexGreater> groups;
  for (const auto& [k, c] : normalized.terms()) {
    const MultiIndex& w = by_g ? k.g : k.f;
    auto it = groups.try_emplace(w, normalized.table()).first;
    it->second.add_term(k.h, c);
  }
  std::erase_if(groups, [](const auto& g) { return g.second.is_zero(); });
  return groups;
}

// ---------------------------------------------------------------------------
// Conditions

std::string condition_string(const DiffOp& expr) {
  std::vector<std::pair<Scalar, std::string>> out;
  for (const auto& [alpha, c] : expr.terms()) expand_into(out, c, word_symbol(*expr.table(), "h", alpha));
  return join_terms(out);
}

std::string Condition::to_string() const { return condition_string(expr) + " = 0"; }

std::vector<DiffOp> ConditionSet::exprs() const {
  std::vector<DiffOp> r;
  for (const auto& c : conditions) r.push_back(c.expr);
  return r;
}

std::string ConditionSet::to_string() const {
  std::string out;
  for (const auto& c : conditions) {
    if (!out.empty()) out += "\n";
    out += c.to_string();
  }
  return out;
}

DiffOp normalize_condition(const DiffOp& expr) {
  if (expr.is_zero()) return expr;
  DiffOp r = divide_content(expr);
  const Poly& lead = r.terms().begin()->second;
  return r * lead.terms().begin()->second.inverse();
}

ConditionSet extract_conditions(const IBPExpression& normalized) {
  ConditionSet set{normalized.table(), {}};
  for (const auto& [w, expr] : group_by_word(normalized)) {
    push_condition(set, {w}, normalize_condition(expr), false);
  }
  return set;
}

ConditionSet first_order_rules(int d) {
  auto table = VarTable::spacetime(d);
  ConditionSet set{table, {}};
  set.conditions.push_back({{}, DiffOp::derivative(table, 0), false});
  set.conditions.push_back({{}, normalize_condition(euler_rule(table)), false});
  return set;
}

ConditionSet reduce_with_rules(const ConditionSet& c, const ConditionSet& rules) {
  const auto& table = c.table;
  require_same_table(table, rules.table, "rule reduction");
  const DiffOp d0 = DiffOp::derivative(table, 0);
  const DiffOp euler = normalize_condition(euler_rule(table));
  bool use_d0 = false;
  bool use_euler = false;
  for (const auto& r : rules.conditions) {
    DiffOp n = normalize_condition(r.expr);
    if (n == d0) {
      use_d0 = true;
    } else if (n == euler) {
      use_euler = true;
    } else {
      throw Error("reduce_with_rules: no rewrite for rule " + r.to_string());
    }
  }
  ConditionSet out{table, {}};
  for (const auto& cond : c.conditions) {
    DiffOp r = reduce_one(cond.expr, use_d0, use_euler);
    if (r.is_zero()) continue;
    r = divide_content(r);
    bool flagged = std::any_of(r.terms().begin(), r.terms().end(),
                               [](const auto& t) { return total_degree(t.first) > 0; });
    push_condition(out, cond.words, std::move(r), flagged);
  }
  return out;
}

std::optional<Scalar> forcing_constant(const ConditionSet& c) {
  for (const auto& cond : c.conditions) {
    if (cond.expr.terms().size() != 1) continue;
    const auto& [alpha, coeff] = *cond.expr.terms().begin();
    if (total_degree(alpha) == 0 && coeff.is_constant() && !coeff.is_zero()) {
      return coeff.terms().begin()->second;
    }
  }
  return std::nullopt;
}

ConditionSet measure_conditions(const StarProduct& s, unsigned order) {
  return extract_conditions(ibp_normalize(commutator_integrand(s, order)));
}

Verdict cross_check_sides(const IBPExpression& integrand) {
  auto by_g = group_by_word(ibp_normalize(integrand, IbpSide::f));
  auto by_f = group_by_word(ibp_normalize(integrand, IbpSide::g));
  Verdict v;
  std::map<MultiIndex, int, GrlexGreater> words;
  for (const auto& [w, e] : by_g) words[w] = 0;
  for (const auto& [w, e] : by_f) words[w] = 0;
  const auto& table = integrand.table();
  for (const auto& [w, unused] : words) {
    ++v.checked;
    DiffOp lhs = by_g.contains(w) ? by_g.at(w) : DiffOp(table);
    DiffOp rhs = by_f.contains(w) ? -by_f.at(w) : DiffOp(table);
    if (lhs == rhs || !v.holds) continue;
    v.holds = false;
    v.context = "word " + monomial_to_string(*table, w) + ": " + condition_string(lhs) + " vs " +
                condition_string(rhs);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Integral check

Scalar box_integral(const Poly& p) {
  Scalar total;
  for (const auto& [m, c] : p.terms()) {
    Rational w = 1;
    bool odd = false;
    for (auto e : m) {
      if (e % 2 != 0) {
        odd = true;
        break;
      }
      w *= Rational(2, e + 1);
    }
    if (!odd) total += c * Scalar(w);
  }
  return total;
}

Poly evaluate(const IBPExpression& e, const Poly& h, const Poly& f, const Poly& g) {
  require_same_table(e.table(), h.table(), "integrand evaluation");
  std::map<MultiIndex, Poly> dh, df, dg;
  auto cached = [](std::map<MultiIndex, Poly>& cache, const Poly& p, const MultiIndex& a) -> const Poly& {
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, partial(p, a)).first;
    return it->second;
  };
  Poly r(e.table());
  for (const auto& [k, c] : e.terms()) {
    r += c * cached(dh, h, k.h) * cached(df, f, k.f) * cached(dg, g, k.g);
  }
  return r;
}

Verdict verify_ibp_integral(const IBPExpression& e, const Poly& h, const Poly& f, const Poly& g,
                            unsigned bump) {
  const auto& table = e.table();
  Poly b = Poly::constant(table, 1);
  for (std::size_t k = 0; k < table->size(); ++k) {
    Poly x = Poly::variable(table, k);
    b *= pow(Poly::constant(table, 1) - x * x, bump);
  }
  Poly fb = f * b;
  Poly gb = g * b;
  Scalar original = box_integral(evaluate(e, h, fb, gb));
  Verdict v;
  for (IbpSide side : {IbpSide::f, IbpSide::g}) {
    ++v.checked;
    Scalar moved = box_integral(evaluate(ibp_normalize(e, side), h, fb, gb));
    if (moved == original || !v.holds) continue;
    v.holds = false;
    v.mismatch = Mismatch{e.order(), Poly::constant(table, original), Poly::constant(table, moved)};
    v.context = std::string("derivatives moved off ") + (side == IbpSide::f ? "f" : "g") +
                ", h = " + h.to_string() + ", f = " + f.to_string() + ", g = " + g.to_string();
  }
  return v;
}

// ---------------------------------------------------------------------------
// Candidates

MeasureCandidate MeasureCandidate::rational(std::string name, RationalFn h) {
  if (!h.table()->is_spacetime()) throw Error("measure candidate must be a function of x");
  MeasureCandidate m(std::move(name), h.table());
  m.quotient_ = std::move(h);
  return m;
}

MeasureCandidate MeasureCandidate::power(std::string name, Poly base, Rational exponent) {
  if (!base.table()->is_spacetime()) throw Error("measure candidate must be a function of x");
  if (base.is_zero()) throw Error("power-family candidate '" + name + "' has a zero base");
  MeasureCandidate m(std::move(name), base.table());
  m.base_ = std::move(base);
  m.exponent_ = std::move(exponent);
  return m;
}

MeasureCandidate::Residual MeasureCandidate::apply(const DiffOp& expr) const {
  if (!same_table(expr.table(), table_)) {
    throw Error("candidate '" + name_ + "' lives in dimension " + std::to_string(table_->dimension()) +
                ", the condition in dimension " + std::to_string(expr.table()->dimension()));
  }
  if (quotient_) {
    RationalFn sum{Poly(table_)};
    for (const auto& [alpha, c] : expr.terms()) sum += RationalFn(c) * partial(*quotient_, alpha);
    return {sum.is_zero(), sum.to_string()};
  }
  // d (P S^(p-j)) = dP S^(p-j) + (p-j) P dS S^(p-j-1)
  const Poly& s = *base_;
  auto derive = [&](const PowerForm& form, std::size_t slot) {
    PowerForm r;
    Poly ds = partial(s, slot);
    for (const auto& [j, p] : form) {
      auto add = [&r, this](unsigned at, const Poly& q) {
        if (q.is_zero()) return;
        auto it = r.try_emplace(at, table_).first;
        it->second += q;
      };
      add(j, partial(p, slot));
      add(j + 1, p * ds * Scalar(exponent_ - Rational(j)));
    }
    std::erase_if(r, [](const auto& t) { return t.second.is_zero(); });
    return r;
  };
  PowerForm total;
  for (const auto& [alpha, c] : expr.terms()) {
    PowerForm form{{0u, Poly::constant(table_, 1)}};
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      for (std::uint32_t r = 0; r < alpha[k]; ++r) form = derive(form, k);
    }
    for (const auto& [j, p] : form) {
      auto it = total.try_emplace(j, table_).first;
      it->second += c * p;
    }
  }
  std::erase_if(total, [](const auto& t) { return t.second.is_zero(); });
  if (total.empty()) return {true, "0"};
  unsigned top = total.rbegin()->first;
  Poly combined(table_);
  for (const auto& [j, p] : total) combined += p * pow(s, top - j);
  if (combined.is_zero()) return {true, "0"};
  return {false, "(" + combined.to_string() + ")*(" + s.to_string() + ")^(" +
                     rational_to_string(exponent_ - Rational(top)) + ")"};
}

std::vector<MeasureCandidate> standard_candidates(int d, unsigned k) {
  if (k == 0) throw Error("power-family exponent k must be positive");
  auto table = VarTable::spacetime(d);
  Poly squares(table);
  Poly powers(table);
  Poly product = Poly::constant(table, 1);
  for (std::size_t i = 1; i < table->size(); ++i) {
    Poly x = Poly::variable(table, i);
    squares += x * x;
    powers += pow(x, k);
    product *= x;
  }
  std::vector<MeasureCandidate> r;
  r.push_back(MeasureCandidate::power("r^(-" + std::to_string(d) + ")", squares,
                                      Scalar::fraction(-d, 2).re()));
  r.push_back(MeasureCandidate::rational("(" + product.to_string() + ")^(-1)",
                                         RationalFn(Poly::constant(table, 1), product)));
  Rational p = Scalar::fraction(-d, static_cast<long>(k)).re();
  r.push_back(MeasureCandidate::power("(" + powers.to_string() + ")^(" + rational_to_string(p) + ")",
                                      powers, p));
  return r;
}

CandidateReport check_candidate(const MeasureCandidate& m, const StarProduct& s, unsigned order) {
  CandidateReport report;
  report.name = m.name();
  report.order = order;
  for (const auto& cond : measure_conditions(s, order).conditions) {
    auto res = m.apply(cond.expr);
    report.entries.push_back({cond.to_string(), res.text, res.vanishes});
    if (!res.vanishes) report.passes = false;
  }
  return report;
}

}  // namespace kstar
