#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kstar/poly.hpp"

namespace kstar {

/// Polynomial vector field X^mu d_mu.
struct VectorField {
  std::vector<Poly> components;

  static VectorField coordinate(const TablePtr& table, std::size_t mu);
  /// x^sigma d_sigma.
  static VectorField euler(const TablePtr& table);
};

/// Polynomial one-form p_mu dx^mu.
class OneForm {
 public:
  explicit OneForm(TablePtr table);
  /// c * dx^mu.
  static OneForm basis(const TablePtr& table, std::size_t mu, const Poly& c);
  static OneForm basis(const TablePtr& table, std::size_t mu);

  const TablePtr& table() const { return table_; }
  const std::vector<Poly>& components() const { return comps_; }
  Poly& operator[](std::size_t mu) { return comps_[mu]; }
  const Poly& operator[](std::size_t mu) const { return comps_[mu]; }
  bool is_zero() const;

  OneForm& operator+=(const OneForm& o);
  OneForm& operator*=(const Scalar& c);
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator*(OneForm a, const Scalar& c) { return a *= c; }
  friend bool operator==(const OneForm& a, const OneForm& b) { return a.comps_ == b.comps_; }

  std::string to_string() const;

 private:
  TablePtr table_;
  std::vector<Poly> comps_;
};

/// Two-form stored by its components on dx^a ^ dx^b with a < b.
class TwoForm {
 public:
  explicit TwoForm(TablePtr table) : table_(std::move(table)) {}

  const std::map<std::pair<std::size_t, std::size_t>, Poly>& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }
  /// Adds c * dx^a ^ dx^b for any a, b (antisymmetry applied).
  void add(std::size_t a, std::size_t b, const Poly& c);

  TwoForm& operator+=(const TwoForm& o);
  friend bool operator==(const TwoForm& a, const TwoForm& b) { return a.comps_ == b.comps_; }

  std::string to_string() const;

 private:
  TablePtr table_;
  std::map<std::pair<std::size_t, std::size_t>, Poly> comps_;
};

/// (L_X w)_mu = X^nu d_nu w_mu + w_nu d_mu X^nu.
OneForm lie_derivative(const VectorField& x, const OneForm& w);

TwoForm wedge(const OneForm& a, const OneForm& b);

}  // namespace kstar
