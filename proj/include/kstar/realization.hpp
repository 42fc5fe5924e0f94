#pragma once

#include <vector>

#include "kstar/diffop.hpp"
#include "kstar/star.hpp"
#include "kstar/verdict.hpp"

namespace kstar {

enum class RealizationKind { kappa, su2 };

/// Spacetime coordinates written as quadratic-linear functions of z, zb.
///
/// kappa(d): x0 = sum_i zb^i z^i, x^i = zb^i.
/// su2:      x^mu = 1/2 zb^a sigma^mu_ab z^b, sigma^0 = identity, a, b = 1, 2.
class Realization {
 public:
  static Realization kappa(int d);
  static Realization su2();

  RealizationKind kind() const { return kind_; }
  const TablePtr& source() const { return source_; }
  const TablePtr& target() const { return target_; }
  const Substitution& images() const { return images_; }

 private:
  Realization(RealizationKind kind, TablePtr source, TablePtr target, Substitution images)
      : kind_(kind), source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}

  RealizationKind kind_;
  TablePtr source_;
  TablePtr target_;
  Substitution images_;
};

Poly pullback(const Realization& r, const Poly& f);
ThetaSeries pullback(const Realization& r, const ThetaSeries& s);

/// pullback(f *_kappa g) == pullback(f) *_WV pullback(g).
Verdict verify_reduction_kappa(const Poly& f, const Poly& g, int d);

/// pullback(f *_su2 g) == pullback(f) *_WV pullback(g) over the su2 realization.
Verdict verify_reduction_su2(const Poly& f, const Poly& g);

/// Differential operators reproducing left and right star multiplication
/// by a coordinate:  x_L^mu = x^mu + theta delta_0^mu x^nu d_nu,
/// x_R^mu = x^mu (1 + theta d_0).
struct LeftRightRealizations {
  std::vector<ThetaDiffOp> left;
  std::vector<ThetaDiffOp> right;
};

LeftRightRealizations left_right_realizations(int d);

/// apply(x_L^mu, f) == x^mu * f and apply(x_R^mu, f) == f * x^mu for every mu.
Verdict verify_left_right(const LeftRightRealizations& ops, const Poly& f);

/// [x^0, x^k] == sign * theta * x^k for every k, in the given family.
Verdict verify_realization_commutators(const std::vector<ThetaDiffOp>& family, int sign);

}  // namespace kstar
