#pragma once

#include <string>

#include "kstar/poly.hpp"

namespace kstar {

/// Quotient num/den of polynomials over one table.
///
/// Kept with the common monomial factor cancelled and the leading
/// denominator coefficient equal to 1; no polynomial gcd is taken, so
/// equality is decided by cross multiplication.
class RationalFn {
 public:
  explicit RationalFn(Poly num);
  RationalFn(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const TablePtr& table() const { return num_.table(); }
  bool is_zero() const { return num_.is_zero(); }

  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o);
  RationalFn& operator*=(const RationalFn& o);
  RationalFn& operator/=(const RationalFn& o);

  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }
  RationalFn operator-() const { return {-num_, den_}; }

  friend bool operator==(const RationalFn& a, const RationalFn& b);

  std::string to_string() const;

 private:
  void normalize();

  Poly num_;
  Poly den_;
};

/// Quotient-rule derivative.
RationalFn partial(const RationalFn& h, std::size_t slot);
RationalFn partial(const RationalFn& h, const MultiIndex& alpha);

}  // namespace kstar
