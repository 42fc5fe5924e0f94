#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kstar/poly.hpp"

namespace kstar {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Surface syntax tree for polynomial expressions.
///
///   sum     := product (('+' | '-') product)*
///   product := unary ('*' unary)*
///   unary   := '-' unary | '+' unary | power
///   power   := primary ('^' integer)?
///   primary := integer | integer '/' integer | 'i' | variable | '(' sum ')'
///
/// U+2212 is read as '-'. There is no division operator; `3/2` is one literal.
struct Expr {
  enum class Kind { number, imaginary, variable, negate, add, subtract, multiply, power };

  Kind kind = Kind::number;
  Rational value;          // number
  std::string name;        // variable
  unsigned exponent = 0;   // power
  std::vector<Expr> args;  // operands
  int line = 1;
  int column = 1;

  /// Structural equality; positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b);
};

Expr parse_expr(std::string_view text);

/// Errors for variables missing from the table point at the variable.
Poly to_poly(const Expr& e, const TablePtr& table);

Poly parse_poly(std::string_view text, const TablePtr& table);

/// Minimal parentheses; parse_expr(to_string(e)) == e.
std::string to_string(const Expr& e);

}  // namespace kstar
