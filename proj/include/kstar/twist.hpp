#pragma once

#include <map>
#include <string>
#include <vector>

#include "kstar/diffop.hpp"
#include "kstar/forms.hpp"
#include "kstar/graded.hpp"
#include "kstar/star.hpp"
#include "kstar/verdict.hpp"

namespace kstar {

/// Element of Diff (x) Diff: a finite sum of c * (x^a d^alpha) (x) (x^b d^beta).
///
/// Each leg is stored normal-ordered, so the representation is canonical.
/// Multiplication composes the legs separately.
class TensorOp {
 public:
  struct Key {
    MultiIndex left_mono;
    MultiIndex left_deriv;
    MultiIndex right_mono;
    MultiIndex right_deriv;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  using TermMap = std::map<Key, Scalar>;

  explicit TensorOp(TablePtr table);
  static TensorOp tensor(const DiffOp& left, const DiffOp& right);
  static TensorOp identity(const TablePtr& table);

  const TablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Key& key, const Scalar& c);

  TensorOp& operator+=(const TensorOp& o);
  TensorOp& operator*=(const Scalar& c);
  friend TensorOp operator+(TensorOp a, const TensorOp& b) { return a += b; }
  friend TensorOp operator*(TensorOp a, const Scalar& c) { return a *= c; }
  friend TensorOp operator*(const TensorOp& a, const TensorOp& b);
  friend bool operator==(const TensorOp& a, const TensorOp& b) { return a.terms_ == b.terms_; }

  /// The legs exchanged.
  TensorOp flipped() const;
  /// mu o (this): multiply the two legs' outputs, as a bidifferential operator at `grade`.
  BiDiffOp multiply_legs(unsigned grade) const;

  std::string to_string() const;

 private:
  TablePtr table_;
  TermMap terms_;
};

enum class TwistKind { jordanian, jordanian_rs };

/// Inverse twist as a theta-graded series of tensor operators.
struct TwistSeries {
  TwistKind kind;
  int dimension;
  Graded<TensorOp> terms;
};

/// E(E-1)...(E-n+1) with E = x^mu d_mu, normal-ordered by composition.
DiffOp falling_factorial_op(const TablePtr& table, unsigned n);
/// sum over |alpha| = n of n!/alpha! x^alpha d^alpha.
DiffOp pure_order_op(const TablePtr& table, unsigned n);

/// Jordanian inverse sum_n theta^n/n! d0^n (x) E^(falling n), or the
/// r-symmetric inverse built from three exponentials, up to `max_order`.
TwistSeries build_twist(TwistKind kind, int d, unsigned max_order);

/// mu o T(f (x) g).
ThetaSeries star_from_twist(const TwistSeries& t, const Poly& f, const Poly& g);

/// mu o T(f (x) g) computed by letting the twist act on monomial pairs
/// directly; no operator expansion is built.
ThetaSeries twist_act(TwistKind kind, const Poly& f, const Poly& g,
                      std::optional<unsigned> cap = std::nullopt);

/// Star product backed by a twist. Order terms are rebuilt to the required
/// order on demand; star_apply goes through twist_act.
StarProduct twist_star_product(TwistKind kind, int d, std::optional<unsigned> cap = std::nullopt);

/// star_from_twist(t) == star_kappa on every monomial pair of total degree <= max_degree.
Verdict verify_lemma2(const TwistSeries& t, int d, unsigned max_degree);
Verdict verify_lemma2(int d, unsigned max_degree);

/// Twist-deformed wedge of dx^mu and dx^nu, split by theta-order.
struct WedgeResult {
  std::vector<TwoForm> by_order;
  TwoForm undeformed;
  /// Order 0 equals the undeformed wedge and every higher order vanishes.
  bool matches_undeformed;
};

WedgeResult wedge_star(std::size_t mu, std::size_t nu, int d, unsigned order);

/// Orders 0..2 of the r-symmetric product with the printed closed forms.
struct RsExpansion {
  ThetaSeries series;
  Poly printed_first;
  bool first_order_matches;
  Poly printed_second;
  /// engine theta^2 coefficient minus printed one.
  Poly second_order_diff;
};

RsExpansion expand_rs_product(const Poly& f, const Poly& g);

/// x^mu (d0 f d_mu g - d_mu f d0 g) / 2 as a grade-1 operator.
BiDiffOp rs_printed_first_order(const TablePtr& table);
/// The long printed theta^2 display for the r-symmetric product.
BiDiffOp rs_printed_second_order(const TablePtr& table);

}  // namespace kstar
