#pragma once

#include <map>
#include <optional>
#include <string>

#include "kstar/poly.hpp"

namespace kstar {

/// Finite power series in the formal deformation parameter theta with
/// polynomial coefficients.
///
/// With a cap N every operation agrees with the exact result modulo
/// theta^(N+1); without a cap the series is exact.
class ThetaSeries {
 public:
  using Coefficients = std::map<unsigned, Poly>;

  explicit ThetaSeries(TablePtr table, std::optional<unsigned> cap = std::nullopt);
  ThetaSeries(const Poly& p, std::optional<unsigned> cap = std::nullopt);  // NOLINT

  const TablePtr& table() const { return table_; }
  const Coefficients& coefficients() const { return coeffs_; }
  std::optional<unsigned> cap() const { return cap_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Highest order with a nonzero coefficient, or nullopt for zero.
  std::optional<unsigned> max_order() const;
  Poly coefficient(unsigned order) const;

  void add_to(unsigned order, const Poly& p);

  ThetaSeries truncated(unsigned max_order) const;
  ThetaSeries with_cap(std::optional<unsigned> cap) const;

  ThetaSeries& operator+=(const ThetaSeries& o);
  ThetaSeries& operator-=(const ThetaSeries& o);
  ThetaSeries& operator*=(const Scalar& c);
  friend ThetaSeries operator+(ThetaSeries a, const ThetaSeries& b) { return a += b; }
  friend ThetaSeries operator-(ThetaSeries a, const ThetaSeries& b) { return a -= b; }
  friend ThetaSeries operator*(const ThetaSeries& a, const ThetaSeries& b);
  friend ThetaSeries operator*(ThetaSeries a, const Scalar& c) { return a *= c; }
  ThetaSeries operator-() const;

  /// Compares coefficients only; caps are ignored.
  friend bool operator==(const ThetaSeries& a, const ThetaSeries& b);

  /// `x0*x1 + theta*(x1)`; `0` for the zero series.
  std::string to_string() const;

 private:
  TablePtr table_;
  std::optional<unsigned> cap_;
  Coefficients coeffs_;
};

std::optional<unsigned> min_cap(std::optional<unsigned> a, std::optional<unsigned> b);

/// Apply a polynomial map coefficientwise.
template <class F>
ThetaSeries map_coefficients(const ThetaSeries& s, const TablePtr& target, F&& f) {
  ThetaSeries r(target, s.cap());
  for (const auto& [n, p] : s.coefficients()) r.add_to(n, f(p));
  return r;
}

}  // namespace kstar
