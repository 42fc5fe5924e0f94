#pragma once

#include <map>
#include <string>

#include "kstar/graded.hpp"
#include "kstar/poly.hpp"
#include "kstar/theta_series.hpp"

namespace kstar {

/// Linear differential operator sum_alpha c_alpha(x) d^alpha with polynomial
/// coefficients, stored normal-ordered (coefficients left of derivatives).
///
/// Because the representation is normal-ordered, two operators are equal iff
/// their term maps are identical.
class DiffOp {
 public:
  using TermMap = std::map<MultiIndex, Poly, GrlexGreater>;

  explicit DiffOp(TablePtr table);

  static DiffOp identity(TablePtr table);
  /// Multiplication by a polynomial.
  static DiffOp multiplication(const Poly& c);
  static DiffOp derivative(TablePtr table, const MultiIndex& alpha);
  static DiffOp derivative(TablePtr table, std::size_t slot, std::uint32_t power = 1);
  /// Euler operator x^mu d_mu over every variable of the table.
  static DiffOp euler(TablePtr table);

  const TablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Poly coefficient(const MultiIndex& alpha) const;

  void add_term(const MultiIndex& alpha, const Poly& c);

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  DiffOp& operator*=(const Scalar& c);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(DiffOp a, const Scalar& c) { return a *= c; }
  friend DiffOp operator*(const Scalar& c, DiffOp a) { return a *= c; }
  DiffOp operator-() const { return *this * Scalar(-1); }

  /// Composition: (a * b)(f) = a(b(f)).
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b);

  friend bool operator==(const DiffOp& a, const DiffOp& b);

  std::string to_string() const;

 private:
  TablePtr table_;
  TermMap terms_;
};

Poly apply(const DiffOp& op, const Poly& f);
DiffOp compose(const DiffOp& a, const DiffOp& b);
DiffOp commutator(const DiffOp& a, const DiffOp& b);

/// Operator polynomial in theta, e.g. x^0 + theta x^nu d_nu.
using ThetaDiffOp = Graded<DiffOp>;

ThetaSeries apply(const ThetaDiffOp& op, const Poly& f);
ThetaDiffOp commutator(const ThetaDiffOp& a, const ThetaDiffOp& b);

/// Theta-graded bidifferential operator
/// sum theta^n mid(x) (d^left f)(d^right g).
///
/// Mid coefficients are functions of the common evaluation point only; they
/// are never differentiated by the operator itself.
class BiDiffOp {
 public:
  struct Key {
    unsigned grade;
    MultiIndex left;
    MultiIndex right;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  using TermMap = std::map<Key, Poly>;

  explicit BiDiffOp(TablePtr table);

  const TablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(unsigned grade, const MultiIndex& left, const Poly& mid, const MultiIndex& right);

  BiDiffOp& operator+=(const BiDiffOp& o);
  BiDiffOp& operator-=(const BiDiffOp& o);
  BiDiffOp& operator*=(const Scalar& c);
  friend BiDiffOp operator+(BiDiffOp a, const BiDiffOp& b) { return a += b; }
  friend BiDiffOp operator-(BiDiffOp a, const BiDiffOp& b) { return a -= b; }
  friend BiDiffOp operator*(BiDiffOp a, const Scalar& c) { return a *= c; }

  friend bool operator==(const BiDiffOp& a, const BiDiffOp& b);

  /// Terms of a single grade.
  BiDiffOp grade_part(unsigned grade) const;
  /// Exchange the roles of the two slots.
  BiDiffOp swapped() const;

  std::string to_string() const;

 private:
  TablePtr table_;
  TermMap terms_;
};

/// Product with coefficients held at the evaluation point: grades, left
/// and right indices add, mids multiply.
BiDiffOp frozen_product(const BiDiffOp& a, const BiDiffOp& b);

ThetaSeries apply(const BiDiffOp& op, const Poly& f, const Poly& g,
                  std::optional<unsigned> cap = std::nullopt);

}  // namespace kstar
