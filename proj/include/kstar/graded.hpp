#pragma once

#include <map>
#include <optional>
#include <string>

#include "kstar/poly.hpp"

namespace kstar {

/// Finite theta-graded sum of operators of type T, multiplied by
/// convolution of grades.
///
/// T must be an algebra over Scalar constructible as a zero from a table,
/// with `+=`, composition `*`, scaling and `is_zero()`.
template <class T>
class Graded {
 public:
  using Parts = std::map<unsigned, T>;

  explicit Graded(TablePtr table, std::optional<unsigned> cap = std::nullopt)
      : table_(std::move(table)), cap_(cap) {}
  Graded(const T& part, unsigned grade = 0, std::optional<unsigned> cap = std::nullopt)  // NOLINT
      : table_(part.table()), cap_(cap) {
    add(grade, part);
  }

  const TablePtr& table() const { return table_; }
  const Parts& parts() const { return parts_; }
  std::optional<unsigned> cap() const { return cap_; }
  bool is_zero() const { return parts_.empty(); }

  T part(unsigned grade) const {
    auto it = parts_.find(grade);
    return it == parts_.end() ? T(table_) : it->second;
  }

  void add(unsigned grade, const T& t) {
    if ((cap_ && grade > *cap_) || t.is_zero()) return;
    auto [it, inserted] = parts_.try_emplace(grade, t);
    if (!inserted) {
      it->second += t;
      if (it->second.is_zero()) parts_.erase(it);
    }
  }

  Graded& operator+=(const Graded& o) {
    for (const auto& [n, t] : o.parts_) add(n, t);
    return *this;
  }
  Graded& operator-=(const Graded& o) {
    for (const auto& [n, t] : o.parts_) add(n, t * Scalar(-1));
    return *this;
  }
  Graded& operator*=(const Scalar& c) {
    Graded r(table_, cap_);
    for (const auto& [n, t] : parts_) r.add(n, t * c);
    return *this = std::move(r);
  }
  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
  friend Graded operator*(Graded a, const Scalar& c) { return a *= c; }

  friend Graded operator*(const Graded& a, const Graded& b) {
    std::optional<unsigned> cap = a.cap_;
    if (b.cap_ && (!cap || *b.cap_ < *cap)) cap = b.cap_;
    Graded r(a.table_, cap);
    for (const auto& [na, ta] : a.parts_) {
      for (const auto& [nb, tb] : b.parts_) {
        if (cap && na + nb > *cap) continue;
        r.add(na + nb, ta * tb);
      }
    }
    return r;
  }

  friend bool operator==(const Graded& a, const Graded& b) { return a.parts_ == b.parts_; }

  std::string to_string() const {
    if (parts_.empty()) return "0";
    std::string out;
    for (const auto& [n, t] : parts_) {
      std::string power = n == 0 ? "" : (n == 1 ? "theta*" : "theta^" + std::to_string(n) + "*");
      std::string term = power + "(" + t.to_string() + ")";
      out += out.empty() ? term : " + " + term;
    }
    return out;
  }

 private:
  TablePtr table_;
  std::optional<unsigned> cap_;
  Parts parts_;
};

/// exp(x) truncated at grade `max_grade`; x must have no grade-0 part.
template <class T>
Graded<T> graded_exp(const Graded<T>& x, const T& one, unsigned max_grade) {
  if (!x.part(0).is_zero()) throw Error("graded exponential needs a nilpotent argument");
  Graded<T> xc(x.table(), max_grade);
  xc += x;
  Graded<T> result(one, 0, max_grade);
  Graded<T> power(one, 0, max_grade);
  for (unsigned k = 1; k <= max_grade; ++k) {
    power = power * xc;
    power *= Scalar::fraction(1, static_cast<long>(k));
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

}  // namespace kstar
