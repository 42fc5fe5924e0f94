#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kstar/scalar.hpp"

namespace kstar {

/// Exponent vector (monomials) or derivative multi-index, one slot per variable.
using MultiIndex = std::vector<std::uint32_t>;

unsigned total_degree(const MultiIndex& a);
MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
/// Componentwise a <= b.
bool divides(const MultiIndex& a, const MultiIndex& b);
/// b - a, requires divides(a, b).
MultiIndex quotient(const MultiIndex& b, const MultiIndex& a);
MultiIndex unit_index(std::size_t size, std::size_t slot, std::uint32_t power = 1);
/// Product of binomial(b_k, a_k) over all slots.
Rational multi_binomial(const MultiIndex& b, const MultiIndex& a);
/// Product of a_k! over all slots.
Rational multi_factorial(const MultiIndex& a);

/// Graded lexicographic order, largest monomial first.
struct GrlexGreater {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

enum class VarKind { spacetime, holomorphic, antiholomorphic };

struct Variable {
  std::string name;
  VarKind kind;
  /// mu for x^mu, i for z^i and zb^i.
  int index;
};

class VarTable;
using TablePtr = std::shared_ptr<const VarTable>;

/// Ordered variable set a polynomial lives over.
///
/// Spacetime tables hold x0..xd; phase-space tables hold z1..zd then
/// zb1..zbd. Factories return shared instances, so tables of the same shape
/// compare equal by pointer.
class VarTable {
 public:
  VarTable(bool spacetime, int d);

  static TablePtr spacetime(int d);
  static TablePtr phase_space(int d);

  int dimension() const { return dimension_; }
  bool is_spacetime() const { return spacetime_; }
  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  const std::vector<Variable>& variables() const { return vars_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws Error for unknown names.
  std::size_t index_of(std::string_view name) const;

  /// Slot of z^i / zb^i (1-based i) in a phase-space table.
  std::size_t z(int i) const;
  std::size_t zb(int i) const;

  friend bool operator==(const VarTable& a, const VarTable& b) {
    return a.spacetime_ == b.spacetime_ && a.dimension_ == b.dimension_;
  }

 private:
  bool spacetime_;
  int dimension_;
  std::vector<Variable> vars_;
};

bool same_table(const TablePtr& a, const TablePtr& b);
void require_same_table(const TablePtr& a, const TablePtr& b, const char* what);

/// Sparse multivariate polynomial with Gaussian-rational coefficients.
class Poly {
 public:
  using TermMap = std::map<MultiIndex, Scalar, GrlexGreater>;

  explicit Poly(TablePtr table);

  static Poly constant(TablePtr table, const Scalar& c);
  static Poly variable(TablePtr table, std::size_t slot);
  static Poly variable(TablePtr table, std::string_view name);
  static Poly monomial(TablePtr table, MultiIndex exponents, const Scalar& c = 1);

  const TablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  Scalar coefficient(const MultiIndex& m) const;

  void add_term(const MultiIndex& m, const Scalar& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Scalar& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
  Poly operator-() const;

  friend bool operator==(const Poly& a, const Poly& b);

  /// Canonical text in graded-lex order, e.g. `x0^2*x1 + 3/2*x2`.
  std::string to_string() const;

 private:
  TablePtr table_;
  TermMap terms_;
};

Poly pow(const Poly& p, unsigned n);

/// Partial derivative with respect to one variable slot.
Poly partial(const Poly& p, std::size_t slot);
Poly partial(const Poly& p, std::string_view name);
/// Mixed partial derivative d^alpha p.
Poly partial(const Poly& p, const MultiIndex& alpha);

/// Variable slot (in the source table) -> image polynomial.
using Substitution = std::map<std::size_t, Poly>;

/// Simultaneous substitution into polynomials over `target`.
/// Throws Error when a variable that occurs in p has no image.
Poly substitute(const Poly& p, const Substitution& images, const TablePtr& target);

/// Largest monomial dividing every term (zero index for the zero polynomial).
MultiIndex monomial_content(const Poly& p);
/// p divided by a monomial that divides every term.
Poly divide_by_monomial(const Poly& p, const MultiIndex& m);

std::string monomial_to_string(const VarTable& table, const MultiIndex& m);

/// Every exponent vector over `nvars` variables with total degree <= max_degree,
/// in increasing degree.
std::vector<MultiIndex> monomials_up_to(std::size_t nvars, unsigned max_degree);

}  // namespace kstar
