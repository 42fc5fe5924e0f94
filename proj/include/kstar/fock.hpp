#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "kstar/scalar.hpp"

namespace kstar {

/// Exact number sum_k q_k sqrt(k) over squarefree k.
class Surd {
 public:
  Surd() = default;
  Surd(long n);  // NOLINT: implicit, Eigen builds Scalar(0) and Scalar(1)
  Surd(const Rational& q);  // NOLINT
  /// sqrt(n), with square factors pulled out.
  static Surd sqrt(unsigned long n);

  bool is_zero() const { return parts_.empty(); }
  const std::map<unsigned long, Rational>& parts() const { return parts_; }

  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(const Surd& a, const Surd& b);
  Surd operator-() const;
  friend bool operator==(const Surd& a, const Surd& b) { return a.parts_ == b.parts_; }

  /// e.g. `2`, `sqrt(3)`, `1/2 + 2*sqrt(2)`.
  std::string to_string() const;

 private:
  void add(unsigned long k, const Rational& q);
  std::map<unsigned long, Rational> parts_;
};

}  // namespace kstar

namespace Eigen {

template <>
struct NumTraits<kstar::Surd> {
  using Real = kstar::Surd;
  using NonInteger = kstar::Surd;
  using Literal = kstar::Surd;
  using Nested = kstar::Surd;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32,
  };
  static kstar::Surd epsilon() { return 0; }
  static kstar::Surd dummy_precision() { return 0; }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace kstar {

/// Column-major sparse; ladder operators have at most one entry per column.
using SurdMatrix = Eigen::SparseMatrix<Surd>;

/// Creation and annihilation operators for d modes on the occupation basis
/// {|n_1 ... n_d> : n_i <= M}, truncated at the cutoff.
class FockRep {
 public:
  FockRep(int d, unsigned cutoff);

  int dimension() const { return d_; }
  unsigned cutoff() const { return cutoff_; }
  std::size_t states() const { return occupations_.size(); }
  const std::vector<unsigned>& occupation(std::size_t state) const { return occupations_[state]; }
  /// `|2,0>`.
  std::string label(std::size_t state) const;
  /// Every n_i <= M - 1.
  bool below_cutoff(std::size_t state) const;

  const SurdMatrix& a(int i) const { return a_[static_cast<std::size_t>(i - 1)]; }
  const SurdMatrix& adag(int i) const { return adag_[static_cast<std::size_t>(i - 1)]; }
  /// X^0 = sum_i a_i^dag a_i.
  SurdMatrix x0() const;
  /// X^i = a_i^dag.
  const SurdMatrix& x(int i) const { return adag(i); }

 private:
  int d_;
  unsigned cutoff_;
  std::vector<std::vector<unsigned>> occupations_;
  std::vector<SurdMatrix> a_;
  std::vector<SurdMatrix> adag_;
};

/// One operator identity lhs == rhs checked column by column.
struct FockCheck {
  std::string identity;
  /// Holds on every state with all n_i <= M - 1.
  bool holds_below_cutoff = true;
  /// States where it fails, all of them.
  std::vector<std::string> failing_states;
  /// Every failing state has some n_i = M.
  bool failures_at_top = true;
};

struct FockReport {
  int dimension;
  unsigned cutoff;
  std::size_t states;
  std::vector<FockCheck> checks;
  /// [X^0, X^i] = X^i and [X^i, X^j] = 0 below the cutoff with failures at the top only.
  bool algebra_holds = true;
};

/// Throws Error for cutoff < 2.
FockReport fock_check(int d, unsigned cutoff);

}  // namespace kstar
