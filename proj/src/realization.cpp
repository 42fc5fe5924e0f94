#include "kstar/realization.hpp"

namespace kstar {

Realization Realization::kappa(int d) {
  auto source = VarTable::spacetime(d);
  auto target = VarTable::phase_space(d);
  Substitution images;
  Poly x0(target);
  for (int i = 1; i <= d; ++i) {
    x0 += Poly::variable(target, target->zb(i)) * Poly::variable(target, target->z(i));
    images.emplace(static_cast<std::size_t>(i), Poly::variable(target, target->zb(i)));
  }
  images.emplace(0, x0);
  return Realization(RealizationKind::kappa, source, target, std::move(images));
}

Realization Realization::su2() {
  auto source = VarTable::spacetime(3);
  auto target = VarTable::phase_space(2);
  const Scalar one(1);
  const Scalar i = Scalar::i();
  // sigma^mu as row-major 2x2 arrays; sigma^0 is the identity.
  const Scalar sigma[4][2][2] = {
      {{one, 0}, {0, one}},
      {{0, one}, {one, 0}},
      {{0, -i}, {i, 0}},
      {{one, 0}, {0, -one}},
  };
  Substitution images;
  for (int mu = 0; mu <= 3; ++mu) {
    Poly x(target);
    for (int a = 1; a <= 2; ++a) {
      for (int b = 1; b <= 2; ++b) {
        const Scalar& s = sigma[mu][a - 1][b - 1];
        if (s.is_zero()) continue;
        x += Poly::variable(target, target->zb(a)) * Poly::variable(target, target->z(b)) * s;
      }
    }
    images.emplace(static_cast<std::size_t>(mu), x * Scalar::fraction(1, 2));
  }
  return Realization(RealizationKind::su2, source, target, std::move(images));
}

Poly pullback(const Realization& r, const Poly& f) {
  if (!same_table(f.table(), r.source())) {
    throw Error("pullback: polynomial dimension does not match the realization");
  }
  return substitute(f, r.images(), r.target());
}

ThetaSeries pullback(const Realization& r, const ThetaSeries& s) {
  return map_coefficients(s, r.target(), [&r](const Poly& p) { return pullback(r, p); });
}

namespace {

Verdict verify_reduction(const Realization& r, const StarProduct& spacetime_star, const Poly& f,
                         const Poly& g) {
  StarProduct wv = build_star(StarKind::wick_voros, r.target()->dimension());
  ThetaSeries lhs = pullback(r, star_apply(spacetime_star, f, g));
  ThetaSeries rhs = star_apply(wv, pullback(r, f), pullback(r, g));
  Verdict v = compare_series(lhs, rhs);
  if (!v.holds) v.context = "f = " + f.to_string() + ", g = " + g.to_string();
  return v;
}

}  // namespace

Verdict verify_reduction_kappa(const Poly& f, const Poly& g, int d) {
  return verify_reduction(Realization::kappa(d), build_star(StarKind::kappa, d), f, g);
}

Verdict verify_reduction_su2(const Poly& f, const Poly& g) {
  return verify_reduction(Realization::su2(), build_star(StarKind::su2, 3), f, g);
}

LeftRightRealizations left_right_realizations(int d) {
  auto table = VarTable::spacetime(d);
  LeftRightRealizations ops;
  DiffOp d0 = DiffOp::derivative(table, 0);
  DiffOp euler = DiffOp::euler(table);
  for (std::size_t mu = 0; mu < table->size(); ++mu) {
    DiffOp x = DiffOp::multiplication(Poly::variable(table, mu));
    ThetaDiffOp left(x, 0);
    if (mu == 0) left.add(1, euler);
    ThetaDiffOp right(x, 0);
    right.add(1, x * d0);
    ops.left.push_back(std::move(left));
    ops.right.push_back(std::move(right));
  }
  return ops;
}

Verdict verify_left_right(const LeftRightRealizations& ops, const Poly& f) {
  const auto& table = f.table();
  StarProduct kappa = build_star(StarKind::kappa, table->dimension());
  Verdict total;
  for (std::size_t mu = 0; mu < table->size(); ++mu) {
    Poly x = Poly::variable(table, mu);
    accumulate(total, compare_series(apply(ops.left[mu], f), star_apply(kappa, x, f)),
               "left x" + std::to_string(mu) + ", f = " + f.to_string());
    accumulate(total, compare_series(apply(ops.right[mu], f), star_apply(kappa, f, x)),
               "right x" + std::to_string(mu) + ", f = " + f.to_string());
  }
  return total;
}

Verdict verify_realization_commutators(const std::vector<ThetaDiffOp>& family, int sign) {
  Verdict total;
  for (std::size_t k = 1; k < family.size(); ++k) {
    ThetaDiffOp lhs = commutator(family[0], family[k]);
    ThetaDiffOp rhs(family[k].table());
    for (const auto& [n, part] : family[k].parts()) rhs.add(n + 1, part * Scalar(sign));
    Verdict one;
    one.checked = 1;
    if (!(lhs == rhs)) {
      one.holds = false;
      one.context = "[x0, x" + std::to_string(k) + "] = " + lhs.to_string() + ", expected " + rhs.to_string();
    }
    accumulate(total, one, "k = " + std::to_string(k));
  }
  return total;
}

}  // namespace kstar
