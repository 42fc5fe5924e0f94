#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kstar/diffop.hpp"
#include "kstar/rational_fn.hpp"
#include "kstar/star.hpp"
#include "kstar/verdict.hpp"

namespace kstar {

/// Integrand sum c(x) (d^h h)(d^f f)(d^g g) over an abstract measure
/// function h and abstract arguments f, g.
class IBPExpression {
 public:
  struct Key {
    MultiIndex h;
    MultiIndex f;
    MultiIndex g;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  using TermMap = std::map<Key, Poly>;

  explicit IBPExpression(TablePtr table, unsigned order = 0);

  const TablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  unsigned order() const { return order_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MultiIndex& h, const MultiIndex& f, const MultiIndex& g, const Poly& c);

  IBPExpression& operator+=(const IBPExpression& o);
  IBPExpression& operator-=(const IBPExpression& o);
  IBPExpression operator-() const;
  friend IBPExpression operator+(IBPExpression a, const IBPExpression& b) { return a += b; }
  friend IBPExpression operator-(IBPExpression a, const IBPExpression& b) { return a -= b; }
  friend bool operator==(const IBPExpression& a, const IBPExpression& b) { return a.terms_ == b.terms_; }

  /// e.g. `x1*h*f_x0*g_x1 - x1*h*f_x1*g_x0`.
  std::string to_string() const;

 private:
  TablePtr table_;
  unsigned order_;
  TermMap terms_;
};

/// theta^order coefficient of h (f * g - g * f). Only the spacetime products
/// (kappa, jordanian, jordanian-rs) make sense here.
IBPExpression commutator_integrand(const StarProduct& s, unsigned order);

enum class IbpSide { f, g };

/// Integrate by parts until no derivative falls on `off`. Boundary terms are dropped.
IBPExpression ibp_normalize(const IBPExpression& e, IbpSide off = IbpSide::f);

/// Coefficient of one surviving derivative word, read as an operator on h.
/// Normalized expressions are grouped this way before any simplification.
std::map<MultiIndex, DiffOp, GrlexGreater> group_by_word(const IBPExpression& normalized);

/// One linear condition sum c_alpha(x) d^alpha h = 0.
struct Condition {
  /// Surviving derivative words (on g, or on f) that produced this condition.
  std::vector<MultiIndex> words;
  DiffOp expr;
  /// Still carries h-derivatives after rule reduction.
  bool flagged = false;

  std::string to_string() const;
};

struct ConditionSet {
  TablePtr table;
  std::vector<Condition> conditions;

  bool empty() const { return conditions.empty(); }
  /// Exprs only, in order.
  std::vector<DiffOp> exprs() const;
  std::string to_string() const;
};

/// Text for sum c_alpha d^alpha h, e.g. `x1*h_x1 + 2*h`.
std::string condition_string(const DiffOp& expr);

/// Divide by common monomial content and scale the leading coefficient to 1.
DiffOp normalize_condition(const DiffOp& expr);

/// Group by word, normalize each group, drop duplicates.
ConditionSet extract_conditions(const IBPExpression& normalized);

/// { d0 h, x^k d_k h + d h } over the spacetime table of dimension d.
ConditionSet first_order_rules(int d);

/// Rewrite with d0 h = 0 and the Euler relation (and all their derivatives).
/// The result is a canonical representative modulo the rules: a condition
/// lying in the ideal they generate reduces to zero and is dropped.
/// Conditions left with h-derivatives are flagged.
ConditionSet reduce_with_rules(const ConditionSet& c, const ConditionSet& rules);

/// Conditions of the form c h = 0 with c a nonzero constant, if any.
std::optional<Scalar> forcing_constant(const ConditionSet& c);

/// The derived order-n condition set for a star product.
ConditionSet measure_conditions(const StarProduct& s, unsigned order);

/// Normalizing onto g gives the f-normalized groups with the opposite sign.
Verdict cross_check_sides(const IBPExpression& integrand);

/// Exact integral over [-1, 1]^(d+1).
Scalar box_integral(const Poly& p);

/// Evaluate an integrand at concrete h, f, g.
Poly evaluate(const IBPExpression& e, const Poly& h, const Poly& f, const Poly& g);

/// Compare box integrals of e and its normal form with f and g replaced by
/// f (1 - x^2)^bump and g (1 - x^2)^bump in every coordinate, so boundary
/// terms vanish.
Verdict verify_ibp_integral(const IBPExpression& e, const Poly& h, const Poly& f, const Poly& g,
                            unsigned bump = 2);

/// A measure function h with exact derivatives.
///
/// Either a quotient of polynomials, or base^exponent with a rational
/// exponent; derivatives of the latter stay of the form sum_j P_j base^(exponent - j).
class MeasureCandidate {
 public:
  static MeasureCandidate rational(std::string name, RationalFn h);
  static MeasureCandidate power(std::string name, Poly base, Rational exponent);

  const std::string& name() const { return name_; }
  const TablePtr& table() const { return table_; }

  struct Residual {
    bool vanishes;
    std::string text;
  };
  /// expr applied to h.
  Residual apply(const DiffOp& expr) const;

 private:
  MeasureCandidate(std::string name, TablePtr table) : name_(std::move(name)), table_(std::move(table)) {}

  std::string name_;
  TablePtr table_;
  std::optional<RationalFn> quotient_;
  std::optional<Poly> base_;
  Rational exponent_;
};

/// r^-d, (prod x_i)^-1 and (sum x_i^k)^(-d/k).
std::vector<MeasureCandidate> standard_candidates(int d, unsigned k = 4);

struct CandidateReport {
  std::string name;
  unsigned order = 0;
  struct Entry {
    std::string condition;
    std::string residual;
    bool vanishes;
  };
  std::vector<Entry> entries;
  bool passes = true;
};

/// Evaluate every order-n condition on the candidate.
CandidateReport check_candidate(const MeasureCandidate& m, const StarProduct& s, unsigned order);

}  // namespace kstar
