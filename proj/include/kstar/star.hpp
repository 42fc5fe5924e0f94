#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <vector>

#include "kstar/diffop.hpp"
#include "kstar/verdict.hpp"

namespace kstar {

enum class StarKind { moyal, wick_voros, kappa, su2, jordanian, jordanian_rs, custom };

std::string_view to_string(StarKind kind);
/// Accepts `moyal`, `wv`, `wick-voros`, `kappa`, `su2`, `jordanian`, `jordanian-rs`.
std::optional<StarKind> parse_star_kind(std::string_view name);

/// A star product f * g = sum_n theta^n B_n(f, g) with each B_n a
/// bidifferential operator.
///
/// The order terms are produced on demand by a source function and memoized;
/// copies share the memo, and the product is otherwise immutable.
class StarProduct {
 public:
  /// Produces B_0 ... B_max.
  using Source = std::function<std::vector<BiDiffOp>(unsigned max_order)>;
  /// Direct evaluation on a pair of polynomials, bypassing the order terms.
  using Evaluator =
      std::function<ThetaSeries(const Poly& f, const Poly& g, std::optional<unsigned> cap)>;

  /// How far the series reaches on polynomial inputs.
  enum class Reach {
    /// B_n(f, g) = 0 once n > min(deg f, deg g).
    min_degree,
    /// B_n(f, g) = 0 once n > deg f + deg g.
    sum_degree,
  };

  StarProduct(StarKind kind, int dimension, TablePtr table, Source source, Reach reach,
              std::optional<unsigned> cap = std::nullopt);

  StarKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  const TablePtr& table() const { return table_; }
  std::optional<unsigned> cap() const { return cap_; }
  Reach reach() const { return reach_; }

  /// Order-n bidifferential part B_n.
  BiDiffOp order(unsigned n) const;
  BiDiffOp generator() const { return order(1); }

  /// Highest order that can contribute for these inputs (cap applied).
  unsigned order_bound(const Poly& f, const Poly& g) const;

  /// Reduction applied before results are compared. Identity except for su2,
  /// whose radius coordinate satisfies (x0)^2 = sum (xi)^2.
  Poly normal_form(const Poly& p) const;

  StarProduct with_cap(std::optional<unsigned> cap) const;

  /// star_apply goes through `e` instead of summing order terms.
  StarProduct with_evaluator(Evaluator e) const;
  const Evaluator& evaluator() const { return evaluator_; }

 private:
  struct Memo {
    std::mutex mutex;
    std::vector<BiDiffOp> orders;
  };

  StarKind kind_;
  int dimension_;
  TablePtr table_;
  Source source_;
  Reach reach_;
  std::optional<unsigned> cap_;
  Evaluator evaluator_;
  std::shared_ptr<Memo> memo_;
};

/// Exponential star product exp(generator) with the generator's coefficients
/// held at the evaluation point.
StarProduct exponential_star(StarKind kind, int dimension, const BiDiffOp& generator,
                             std::optional<unsigned> cap = std::nullopt);

/// Builds any of the named products. su2 ignores `d` and works on x0..x3.
StarProduct build_star(StarKind kind, int d, std::optional<unsigned> cap = std::nullopt);

ThetaSeries star_apply(const StarProduct& s, const Poly& f, const Poly& g);
/// Bilinear extension to theta-series arguments.
ThetaSeries star_apply(const StarProduct& s, const ThetaSeries& f, const ThetaSeries& g);

ThetaSeries star_commutator(const StarProduct& s, const Poly& f, const Poly& g);

enum class PoissonStructure { kappa_classical, canonical_z };

/// {x0, xi} = i xi for kappa_classical; {zi, zbj} = i delta_ij for canonical_z.
Poly poisson_bracket(const Poly& f, const Poly& g, PoissonStructure structure);

/// (f*g)*h == f*(g*h), compared through the product's normal form.
Verdict verify_associativity(const StarProduct& s, const Poly& f, const Poly& g, const Poly& h);

/// pullback(f) *_Moyal pullback(g) - pullback(f *_kappa g) over the
/// (x0 = sum zb z, xi = zb) realization.
ThetaSeries compare_moyal_reduction(const Poly& f, const Poly& g, int d);

/// (x0)^2 -> sum_i (xi)^2 until every monomial has x0-degree <= 1.
Poly reduce_radius_relation(const Poly& p);

}  // namespace kstar
