#include <doctest.h>

#include "generators.hpp"
#include "kstar/forms.hpp"
#include "kstar/realization.hpp"

using namespace kstar;

namespace {

Poly var(const TablePtr& t, std::string_view name) { return Poly::variable(t, name); }

MultiIndex e(const TablePtr& t, std::size_t slot) { return unit_index(t->size(), slot); }

Poly apply_field(const VectorField& x, const Poly& p) {
  Poly r(p.table());
  for (std::size_t mu = 0; mu < x.components.size(); ++mu) r += x.components[mu] * partial(p, mu);
  return r;
}

OneForm times(const Poly& p, const OneForm& w) {
  OneForm r(w.table());
  for (std::size_t mu = 0; mu < w.components().size(); ++mu) r[mu] = p * w[mu];
  return r;
}

}  // namespace

TEST_CASE("operator application") {
  auto t = VarTable::spacetime(1);
  CHECK(apply(DiffOp::derivative(t, 0), var(t, "x1")).is_zero());
  CHECK(apply(DiffOp::euler(t), var(t, "x0") * var(t, "x1")) == var(t, "x0") * var(t, "x1") * Scalar(2));
  LeftRightRealizations ops = left_right_realizations(1);
  CHECK(apply(ops.left[0], Poly::constant(t, 1)) == ThetaSeries(var(t, "x0")));
  ThetaSeries expected(t);
  expected.add_to(0, var(t, "x0") * var(t, "x0"));
  expected.add_to(1, var(t, "x0"));
  CHECK(apply(ops.right[0], var(t, "x0")) == expected);
}

TEST_CASE("canonical commutator and normal ordering") {
  auto t = VarTable::spacetime(1);
  DiffOp d0 = DiffOp::derivative(t, 0);
  DiffOp x0 = DiffOp::multiplication(var(t, "x0"));
  CHECK(compose(d0, x0) - compose(x0, d0) == DiffOp::identity(t));
  // d0 x0 normal-orders to x0 d0 + 1
  DiffOp expected = x0 * d0 + DiffOp::identity(t);
  CHECK(compose(d0, x0) == expected);
  CHECK(compose(d0, x0).terms().size() == 2);
}

TEST_CASE("realization operators have the stated form") {
  for (int d = 1; d <= 3; ++d) {
    auto t = VarTable::spacetime(d);
    LeftRightRealizations ops = left_right_realizations(d);
    // x_L^0 = x0 + theta x^nu d_nu, x_L^k = x^k
    ThetaDiffOp l0(DiffOp::multiplication(var(t, "x0")));
    l0.add(1, DiffOp::euler(t));
    CHECK(ops.left[0] == l0);
    for (int k = 1; k <= d; ++k) {
      std::size_t s = static_cast<std::size_t>(k);
      CHECK(ops.left[s] == ThetaDiffOp(DiffOp::multiplication(Poly::variable(t, s))));
      // x_R^k = x^k + theta x^k d0
      ThetaDiffOp rk(DiffOp::multiplication(Poly::variable(t, s)));
      rk.add(1, DiffOp::multiplication(Poly::variable(t, s)) * DiffOp::derivative(t, 0));
      CHECK(ops.right[s] == rk);
    }
    // hand commutators: [x0 + theta E, x^k] = theta x^k and
    // [x0 (1 + theta d0), x^k (1 + theta d0)] = -theta x^k (1 + theta d0)
    for (int k = 1; k <= d; ++k) {
      std::size_t s = static_cast<std::size_t>(k);
      ThetaDiffOp expected_left(t);
      expected_left.add(1, DiffOp::multiplication(Poly::variable(t, s)));
      CHECK(commutator(ops.left[0], ops.left[s]) == expected_left);
      ThetaDiffOp expected_right(t);
      expected_right.add(1, DiffOp::multiplication(-Poly::variable(t, s)));
      expected_right.add(2, DiffOp::multiplication(-Poly::variable(t, s)) * DiffOp::derivative(t, 0));
      CHECK(commutator(ops.right[0], ops.right[s]) == expected_right);
    }
    CHECK(verify_realization_commutators(ops.left, 1).holds);
    CHECK(verify_realization_commutators(ops.right, -1).holds);
    CHECK_FALSE(verify_realization_commutators(ops.right, 1).holds);
  }
}

TEST_CASE("composition is associative and agrees with application") {
  gen::Rng r(21);
  for (int d = 1; d <= 2; ++d) {
    auto t = VarTable::spacetime(d);
    for (int k = 0; k < 40; ++k) {
      DiffOp a = gen::diffop(r, t, 2, 2), b = gen::diffop(r, t, 2, 2), c = gen::diffop(r, t, 2, 2);
      CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
      Poly f = gen::poly(r, t, 4);
      CHECK(apply(compose(a, b), f) == apply(a, apply(b, f)));
    }
  }
}

TEST_CASE("equal operators have identical normal forms") {
  gen::Rng r(4);
  auto t = VarTable::spacetime(2);
  for (int k = 0; k < 30; ++k) {
    DiffOp a = gen::diffop(r, t, 2, 2), b = gen::diffop(r, t, 2, 2);
    // a b - b a built two ways
    DiffOp lhs = commutator(a, b);
    DiffOp rhs = compose(a, b) - compose(b, a);
    CHECK(lhs == rhs);
    CHECK(lhs.to_string() == rhs.to_string());
    // operators acting identically on a spanning set of monomials are equal
    bool same_action = true;
    for (const auto& m : monomials_up_to(t->size(), 4)) {
      Poly f = Poly::monomial(t, m);
      same_action = same_action && apply(lhs, f) == apply(rhs, f);
    }
    CHECK(same_action);
  }
}

TEST_CASE("bidifferential evaluation") {
  auto t = VarTable::spacetime(1);
  BiDiffOp b(t);
  b.add_term(1, e(t, 0), var(t, "x1"), e(t, 1));
  ThetaSeries r = apply(b, var(t, "x0"), var(t, "x1"));
  CHECK(r.coefficient(1) == var(t, "x1"));
  CHECK(r.coefficient(0).is_zero());

  BiDiffOp unit(t);
  MultiIndex none(t->size(), 0);
  unit.add_term(0, none, Poly::constant(t, 1), none);
  unit.add_term(1, e(t, 0), var(t, "x0"), e(t, 0));
  unit.add_term(2, e(t, 1), var(t, "x1"), none);
  Poly g = var(t, "x0") * var(t, "x1") + Poly::constant(t, 3);
  CHECK(apply(unit, Poly::constant(t, 1), g) == ThetaSeries(g));

  BiDiffOp zero_order(t);
  zero_order.add_term(0, none, Poly::constant(t, 1), none);
  Poly f = var(t, "x0") + var(t, "x1");
  CHECK(apply(zero_order, f, g) == ThetaSeries(f * g));
}

TEST_CASE("Lie derivatives of one-forms") {
  auto t = VarTable::spacetime(2);
  for (std::size_t mu = 0; mu < t->size(); ++mu) {
    CHECK(lie_derivative(VectorField::coordinate(t, 0), OneForm::basis(t, mu)).is_zero());
    CHECK(lie_derivative(VectorField::euler(t), OneForm::basis(t, mu)) == OneForm::basis(t, mu));
  }
  OneForm w = OneForm::basis(t, 2, var(t, "x1"));
  CHECK(lie_derivative(VectorField::euler(t), w) == OneForm::basis(t, 2, var(t, "x1") * Scalar(2)));
}

TEST_CASE("Lie derivative obeys the Leibniz rule") {
  gen::Rng r(9);
  auto t = VarTable::spacetime(2);
  for (int k = 0; k < 40; ++k) {
    VectorField x{{gen::poly(r, t, 2, 2), gen::poly(r, t, 2, 2), gen::poly(r, t, 2, 2)}};
    OneForm w(t);
    for (std::size_t mu = 0; mu < t->size(); ++mu) w[mu] = gen::poly(r, t, 2, 2);
    Poly p = gen::poly(r, t, 3);
    CHECK(lie_derivative(x, times(p, w)) == times(apply_field(x, p), w) + times(p, lie_derivative(x, w)));
  }
}

TEST_CASE("wedge is antisymmetric") {
  auto t = VarTable::spacetime(2);
  CHECK(wedge(OneForm::basis(t, 1), OneForm::basis(t, 1)).is_zero());
  TwoForm ab = wedge(OneForm::basis(t, 0), OneForm::basis(t, 1));
  TwoForm ba = wedge(OneForm::basis(t, 1), OneForm::basis(t, 0));
  ab += ba;
  CHECK(ab.is_zero());
}
