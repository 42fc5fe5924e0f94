#include <doctest.h>

#include "generators.hpp"
#include "kstar/realization.hpp"
#include "kstar/star.hpp"

using namespace kstar;

namespace {

Poly var(const TablePtr& t, std::string_view name) { return Poly::variable(t, name); }

ThetaSeries series(const TablePtr& t, std::initializer_list<Poly> coeffs) {
  ThetaSeries s(t);
  unsigned n = 0;
  for (const auto& c : coeffs) s.add_to(n++, c);
  return s;
}

MultiIndex e(const TablePtr& t, std::size_t slot, std::uint32_t p = 1) { return unit_index(t->size(), slot, p); }

const StarKind kAllKinds[] = {StarKind::moyal,    StarKind::wick_voros, StarKind::kappa,
                              StarKind::su2,      StarKind::jordanian,  StarKind::jordanian_rs};

}  // namespace

TEST_CASE("first-order terms of the named products") {
  {
    StarProduct s = build_star(StarKind::kappa, 1);
    auto t = s.table();
    BiDiffOp b(t);
    b.add_term(1, e(t, 0), var(t, "x0"), e(t, 0));
    b.add_term(1, e(t, 0), var(t, "x1"), e(t, 1));
    CHECK(s.order(1) == b);
  }
  {
    StarProduct s = build_star(StarKind::wick_voros, 1);
    auto t = s.table();
    BiDiffOp b(t);
    b.add_term(1, e(t, t->z(1)), Poly::constant(t, 1), e(t, t->zb(1)));
    CHECK(s.order(1) == b);
  }
  {
    StarProduct s = build_star(StarKind::moyal, 1);
    auto t = s.table();
    BiDiffOp b(t);
    b.add_term(1, e(t, t->z(1)), Poly::constant(t, Scalar::fraction(1, 2)), e(t, t->zb(1)));
    b.add_term(1, e(t, t->zb(1)), Poly::constant(t, Scalar::fraction(-1, 2)), e(t, t->z(1)));
    CHECK(s.order(1) == b);
  }
}

TEST_CASE("kappa order-n term is d0^n/n! against x^alpha d^alpha / alpha!") {
  for (int d = 1; d <= 3; ++d) {
    StarProduct s = build_star(StarKind::kappa, d);
    auto t = s.table();
    for (unsigned n = 0; n <= 4; ++n) {
      // (1/n!) (n!/alpha!) = 1/alpha!
      BiDiffOp b(t);
      for (const auto& alpha : monomials_up_to(t->size(), n)) {
        if (total_degree(alpha) != n) continue;
        Scalar c(Rational(1) / multi_factorial(alpha));
        b.add_term(n, e(t, 0, n), Poly::monomial(t, alpha, c), alpha);
      }
      CHECK(s.order(n) == b);
    }
  }
}

TEST_CASE("star product examples") {
  auto z = VarTable::phase_space(1);
  StarProduct wv = build_star(StarKind::wick_voros, 1);
  Poly z1 = var(z, "z1"), zb1 = var(z, "zb1");
  CHECK(star_apply(wv, z1, zb1) == series(z, {z1 * zb1, Poly::constant(z, 1)}));
  CHECK(star_apply(wv, zb1, z1) == series(z, {z1 * zb1}));
  CHECK(star_commutator(wv, z1, zb1) == series(z, {Poly(z), Poly::constant(z, 1)}));
  StarProduct moyal = build_star(StarKind::moyal, 1);
  CHECK(star_apply(moyal, z1, zb1) == series(z, {z1 * zb1, Poly::constant(z, Scalar::fraction(1, 2))}));

  auto x = VarTable::spacetime(1);
  StarProduct kappa = build_star(StarKind::kappa, 1);
  Poly x0 = var(x, "x0"), x1 = var(x, "x1");
  CHECK(star_apply(kappa, x0, x1) == series(x, {x0 * x1, x1}));
  CHECK(star_apply(kappa, x1, x0) == series(x, {x0 * x1}));
  CHECK(star_apply(kappa, x0, x0) == series(x, {x0 * x0, x0}));
  CHECK(star_apply(kappa, Poly::constant(x, 1), x1) == series(x, {x1}));
}

TEST_CASE("canonical commutators for Wick-Voros and Moyal, d <= 4") {
  for (int d = 1; d <= 4; ++d) {
    for (StarKind kind : {StarKind::wick_voros, StarKind::moyal}) {
      StarProduct s = build_star(kind, d);
      auto t = s.table();
      for (int i = 1; i <= d; ++i) {
        for (int j = 1; j <= d; ++j) {
          Poly zi = Poly::variable(t, t->z(i));
          ThetaSeries expected(t);
          if (i == j) expected.add_to(1, Poly::constant(t, 1));
          CHECK(star_commutator(s, zi, Poly::variable(t, t->zb(j))) == expected);
          CHECK(star_commutator(s, zi, Poly::variable(t, t->z(j))).is_zero());
        }
      }
    }
  }
}

TEST_CASE("kappa-Minkowski relations, d <= 4") {
  for (int d = 1; d <= 4; ++d) {
    StarProduct s = build_star(StarKind::kappa, d);
    auto t = s.table();
    for (int i = 1; i <= d; ++i) {
      Poly xi = Poly::variable(t, static_cast<std::size_t>(i));
      CHECK(star_commutator(s, var(t, "x0"), xi) == series(t, {Poly(t), xi}));
      for (int j = 1; j <= d; ++j) {
        CHECK(star_commutator(s, xi, Poly::variable(t, static_cast<std::size_t>(j))).is_zero());
      }
    }
  }
}

TEST_CASE("su2 coordinates close on i theta epsilon") {
  StarProduct s = build_star(StarKind::su2, 3);
  auto t = s.table();
  const int cyclic[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  for (const auto& ijk : cyclic) {
    Poly xi = Poly::variable(t, static_cast<std::size_t>(ijk[0]));
    Poly xj = Poly::variable(t, static_cast<std::size_t>(ijk[1]));
    Poly xk = Poly::variable(t, static_cast<std::size_t>(ijk[2]));
    ThetaSeries expected(t);
    expected.add_to(1, xk * Scalar::i());
    CHECK(compare_series(star_commutator(s, xi, xj), expected, [&s](const Poly& p) { return s.normal_form(p); }).holds);
    CHECK(compare_series(star_commutator(s, xj, xi), -expected, [&s](const Poly& p) { return s.normal_form(p); }).holds);
  }
}

TEST_CASE("radius relation reduction") {
  auto t = VarTable::spacetime(3);
  Poly x0 = var(t, "x0");
  Poly r2 = var(t, "x1") * var(t, "x1") + var(t, "x2") * var(t, "x2") + var(t, "x3") * var(t, "x3");
  CHECK(reduce_radius_relation(x0 * x0) == r2);
  CHECK(reduce_radius_relation(x0 * x0 * x0) == x0 * r2);
  CHECK(reduce_radius_relation(x0 * var(t, "x1")) == x0 * var(t, "x1"));
}

TEST_CASE("classical brackets") {
  auto x = VarTable::spacetime(2);
  CHECK(poisson_bracket(var(x, "x0"), var(x, "x1"), PoissonStructure::kappa_classical) == var(x, "x1") * Scalar::i());
  CHECK(poisson_bracket(var(x, "x1"), var(x, "x2"), PoissonStructure::kappa_classical).is_zero());
  auto z = VarTable::phase_space(1);
  CHECK(poisson_bracket(var(z, "z1"), var(z, "zb1"), PoissonStructure::canonical_z) == Poly::constant(z, Scalar::i()));
}

TEST_CASE("order-1 antisymmetric part of kappa is the classical bracket") {
  gen::Rng r(31);
  for (int d = 1; d <= 3; ++d) {
    StarProduct s = build_star(StarKind::kappa, d);
    auto t = s.table();
    for (int k = 0; k < 25; ++k) {
      Poly f = gen::poly(r, t, 3), g = gen::poly(r, t, 3);
      Poly hand(t);
      for (int i = 1; i <= d; ++i) {
        std::size_t sl = static_cast<std::size_t>(i);
        Poly xi = Poly::variable(t, sl);
        hand += partial(f, 0) * xi * partial(g, sl) - xi * partial(f, sl) * partial(g, 0);
      }
      Poly order1 = star_commutator(s, f, g).coefficient(1);
      CHECK(order1 == hand);
      CHECK(order1 * Scalar::i() == poisson_bracket(f, g, PoissonStructure::kappa_classical));
    }
  }
}

// exp(c theta Laplacian) applied to a theta series, Laplacian = sum_i d_zi d_zbi.
ThetaSeries heat(const ThetaSeries& s, const Scalar& c, unsigned max_grade) {
  auto t = s.table();
  DiffOp lap(t);
  for (int i = 1; i <= t->dimension(); ++i) {
    MultiIndex a(t->size(), 0);
    a[t->z(i)] = 1;
    a[t->zb(i)] = 1;
    lap.add_term(a, Poly::constant(t, c));
  }
  ThetaDiffOp gen(lap, 1);
  ThetaDiffOp op = graded_exp(gen, DiffOp::identity(t), max_grade);
  ThetaSeries r(t);
  for (const auto& [n, p] : s.coefficients()) {
    ThetaSeries image = apply(op, p);
    for (const auto& [m, q] : image.coefficients()) r.add_to(n + m, q);
  }
  return r;
}

TEST_CASE("Wick-Voros and Moyal differ by a symmetric first-order term") {
  gen::Rng r(8);
  for (int d = 1; d <= 2; ++d) {
    StarProduct wv = build_star(StarKind::wick_voros, d);
    StarProduct moyal = build_star(StarKind::moyal, d);
    auto t = wv.table();
    for (int k = 0; k < 25; ++k) {
      Poly f = gen::poly(r, t, 3), g = gen::poly(r, t, 3);
      ThetaSeries dfg = star_apply(wv, f, g) - star_apply(moyal, f, g);
      ThetaSeries dgf = star_apply(wv, g, f) - star_apply(moyal, g, f);
      CHECK(dfg.coefficient(1) == dgf.coefficient(1));
    }
  }
  // From order 2 on the difference is not symmetric: f = z^2, g = zb^2 gives
  // 2 - 1/2 one way and 0 - 1/2 the other.
  auto t = VarTable::phase_space(1);
  StarProduct wv = build_star(StarKind::wick_voros, 1);
  StarProduct moyal = build_star(StarKind::moyal, 1);
  Poly f = pow(var(t, "z1"), 2), g = pow(var(t, "zb1"), 2);
  CHECK((star_apply(wv, f, g) - star_apply(moyal, f, g)).coefficient(2) == Poly::constant(t, Scalar::fraction(3, 2)));
  CHECK((star_apply(wv, g, f) - star_apply(moyal, g, f)).coefficient(2) == Poly::constant(t, Scalar::fraction(-1, 2)));
}

TEST_CASE("Wick-Voros is Moyal conjugated by exp(-theta/2 Laplacian)") {
  gen::Rng r(18);
  for (int d = 1; d <= 2; ++d) {
    StarProduct wv = build_star(StarKind::wick_voros, d);
    StarProduct moyal = build_star(StarKind::moyal, d);
    auto t = wv.table();
    for (int k = 0; k < 20; ++k) {
      Poly f = gen::poly(r, t, 3), g = gen::poly(r, t, 3);
      const Scalar down = Scalar::fraction(-1, 2), up = Scalar::fraction(1, 2);
      ThetaSeries inner = star_apply(moyal, heat(ThetaSeries(f), down, 3), heat(ThetaSeries(g), down, 3));
      CHECK(heat(inner, up, 12) == star_apply(wv, f, g));
    }
  }
}

TEST_CASE("unit law for every product") {
  gen::Rng r(12);
  for (StarKind kind : kAllKinds) {
    StarProduct s = build_star(kind, 2);
    auto t = s.table();
    Poly one = Poly::constant(t, 1);
    for (int k = 0; k < 10; ++k) {
      Poly f = gen::poly(r, t, 4);
      CHECK(star_apply(s, one, f) == ThetaSeries(f));
      CHECK(star_apply(s, f, one) == ThetaSeries(f));
      CHECK(star_commutator(s, f, f).is_zero());
    }
  }
}

TEST_CASE("associativity examples and a corrupted product") {
  auto x = VarTable::spacetime(1);
  StarProduct kappa = build_star(StarKind::kappa, 1);
  CHECK(verify_associativity(kappa, var(x, "x0"), var(x, "x1"), var(x, "x0")).holds);

  gen::Rng r(2);
  StarProduct wv = build_star(StarKind::wick_voros, 2);
  for (int k = 0; k < 5; ++k) {
    CHECK(verify_associativity(wv, gen::poly(r, wv.table(), 3), gen::poly(r, wv.table(), 3), gen::poly(r, wv.table(), 3)).holds);
  }

  // Double the order-2 term of kappa.
  StarProduct::Source corrupted = [kappa](unsigned max_order) {
    std::vector<BiDiffOp> orders;
    for (unsigned n = 0; n <= max_order; ++n) orders.push_back(n == 2 ? kappa.order(n) * Scalar(2) : kappa.order(n));
    return orders;
  };
  StarProduct bad(StarKind::custom, 1, x, corrupted, StarProduct::Reach::min_degree);
  Verdict v = verify_associativity(bad, var(x, "x0"), var(x, "x0"), var(x, "x0") * var(x, "x1"));
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.mismatch.has_value());
  CHECK(v.mismatch->order == 2);
}

TEST_CASE("associativity on random triples") {
  gen::Rng r(99);
  for (StarKind kind : kAllKinds) {
    for (int d = 1; d <= 3; ++d) {
      StarProduct s = build_star(kind, d);
      for (int k = 0; k < 6; ++k) {
        Poly f = gen::poly(r, s.table(), 3, 3), g = gen::poly(r, s.table(), 3, 3), h = gen::poly(r, s.table(), 3, 3);
        Verdict v = verify_associativity(s, f, g, h);
        INFO(to_string(kind), " d = ", d, ": ", v.describe());
        CHECK(v.holds);
      }
    }
  }
}

TEST_CASE("capped products truncate the exact one") {
  auto x = VarTable::spacetime(1);
  StarProduct exact = build_star(StarKind::kappa, 1);
  Poly f = pow(var(x, "x0"), 3);
  Poly g = pow(var(x, "x0"), 2) * var(x, "x1");
  for (unsigned cap = 0; cap <= 3; ++cap) {
    CHECK(star_apply(build_star(StarKind::kappa, 1, cap), f, g) == star_apply(exact, f, g).truncated(cap));
  }
}

TEST_CASE("Moyal does not reproduce kappa under the same realization") {
  auto x = VarTable::spacetime(1);
  auto z = VarTable::phase_space(1);
  ThetaSeries diff = compare_moyal_reduction(var(x, "x0"), var(x, "x1"), 1);
  CHECK(diff == series(z, {Poly(z), var(z, "zb1") * Scalar::fraction(-1, 2)}));
  CHECK(compare_moyal_reduction(var(x, "x1"), var(x, "x1"), 1).is_zero());
  // f = g = x0: order 1 of Moyal cancels on z zb, order 2 is (theta/2)^2/2 * (-2);
  // kappa gives (z zb)^2 + theta z zb
  Poly zzb = var(z, "z1") * var(z, "zb1");
  CHECK(compare_moyal_reduction(var(x, "x0"), var(x, "x0"), 1) ==
        series(z, {Poly(z), -zzb, Poly::constant(z, Scalar::fraction(-1, 4))}));
}

TEST_CASE("product kinds parse and print") {
  CHECK(parse_star_kind("wv") == StarKind::wick_voros);
  CHECK(parse_star_kind("wick-voros") == StarKind::wick_voros);
  CHECK(parse_star_kind("jordanian-rs") == StarKind::jordanian_rs);
  CHECK_FALSE(parse_star_kind("weyl").has_value());
  CHECK(to_string(StarKind::wick_voros) == "wv");
}
