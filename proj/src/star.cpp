#include "kstar/star.hpp"

#include <algorithm>

#include "kstar/realization.hpp"
#include "kstar/twist.hpp"

namespace kstar {

std::string_view to_string(StarKind kind) {
  switch (kind) {
    case StarKind::moyal: return "moyal";
    case StarKind::wick_voros: return "wv";
    case StarKind::kappa: return "kappa";
    case StarKind::su2: return "su2";
    case StarKind::jordanian: return "jordanian";
    case StarKind::jordanian_rs: return "jordanian-rs";
    case StarKind::custom: return "custom";
  }
  return "unknown";
}

std::optional<StarKind> parse_star_kind(std::string_view name) {
  if (name == "moyal") return StarKind::moyal;
  if (name == "wv" || name == "wick-voros" || name == "wick_voros") return StarKind::wick_voros;
  if (name == "kappa") return StarKind::kappa;
  if (name == "su2") return StarKind::su2;
  if (name == "jordanian") return StarKind::jordanian;
  if (name == "jordanian-rs" || name == "jordanian_rs") return StarKind::jordanian_rs;
  return std::nullopt;
}

StarProduct::StarProduct(StarKind kind, int dimension, TablePtr table, Source source, Reach reach,
                         std::optional<unsigned> cap)
    : kind_(kind),
      dimension_(dimension),
      table_(std::move(table)),
      source_(std::move(source)),
      reach_(reach),
      cap_(cap),
      memo_(std::make_shared<Memo>()) {}

BiDiffOp StarProduct::order(unsigned n) const {
  std::lock_guard lock(memo_->mutex);
  if (memo_->orders.size() <= n) {
    memo_->orders = source_(n);
    if (memo_->orders.size() <= n) throw Error("star product source returned too few orders");
  }
  return memo_->orders[n];
}

unsigned StarProduct::order_bound(const Poly& f, const Poly& g) const {
  if (f.is_zero() || g.is_zero()) return 0;
  auto df = static_cast<unsigned>(f.degree());
  auto dg = static_cast<unsigned>(g.degree());
  unsigned bound = reach_ == Reach::min_degree ? std::min(df, dg) : df + dg;
  if (cap_) bound = std::min(bound, *cap_);
  return bound;
}

Poly StarProduct::normal_form(const Poly& p) const {
  return kind_ == StarKind::su2 ? reduce_radius_relation(p) : p;
}

StarProduct StarProduct::with_cap(std::optional<unsigned> cap) const {
  StarProduct r(*this);
  r.cap_ = cap;
  return r;
}

StarProduct StarProduct::with_evaluator(Evaluator e) const {
  StarProduct r(*this);
  r.evaluator_ = std::move(e);
  return r;
}

Poly reduce_radius_relation(const Poly& p) {
  const auto& table = p.table();
  Poly radius_sq(table);
  for (std::size_t k = 1; k < table->size(); ++k) radius_sq += pow(Poly::variable(table, k), 2);
  Poly r(table);
  Poly pending = p;
  while (!pending.is_zero()) {
    Poly next(table);
    for (const auto& [m, c] : pending.terms()) {
      if (m[0] < 2) {
        r.add_term(m, c);
        continue;
      }
      MultiIndex lowered(m);
      lowered[0] -= 2;
      next += Poly::monomial(table, lowered, c) * radius_sq;
    }
    pending = std::move(next);
  }
  return r;
}

StarProduct exponential_star(StarKind kind, int dimension, const BiDiffOp& generator,
                             std::optional<unsigned> cap) {
  auto table = generator.table();
  auto source = [generator, table](unsigned max_order) {
    std::vector<BiDiffOp> orders;
    BiDiffOp unit(table);
    MultiIndex none(table->size(), 0);
    unit.add_term(0, none, Poly::constant(table, 1), none);
    orders.push_back(unit);
    for (unsigned n = 1; n <= max_order; ++n) {
      BiDiffOp next = frozen_product(orders.back(), generator);
      next *= Scalar::fraction(1, n);
      orders.push_back(std::move(next));
    }
    return orders;
  };
  return StarProduct(kind, dimension, table, source, StarProduct::Reach::min_degree, cap);
}

namespace {

BiDiffOp moyal_generator(int d, bool symmetric) {
  auto table = VarTable::phase_space(d);
  BiDiffOp gen(table);
  const auto n = table->size();
  for (int i = 1; i <= d; ++i) {
    auto dz = unit_index(n, table->z(i));
    auto dzb = unit_index(n, table->zb(i));
    if (symmetric) {
      gen.add_term(1, dz, Poly::constant(table, Scalar::fraction(1, 2)), dzb);
      gen.add_term(1, dzb, Poly::constant(table, Scalar::fraction(-1, 2)), dz);
    } else {
      gen.add_term(1, dz, Poly::constant(table, 1), dzb);
    }
  }
  return gen;
}

BiDiffOp kappa_generator(int d) {
  auto table = VarTable::spacetime(d);
  BiDiffOp gen(table);
  const auto n = table->size();
  for (std::size_t nu = 0; nu < n; ++nu) {
    gen.add_term(1, unit_index(n, 0), Poly::variable(table, nu), unit_index(n, nu));
  }
  return gen;
}

// Levi-Civita symbol on {1, 2, 3}.
int epsilon(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((i == 1 && j == 2) || (i == 2 && j == 3) || (i == 3 && j == 1)) ? 1 : -1;
}

// (1/2) c^{mu nu}(x) d_mu (x) d_nu with c^{ij} = delta^{ij} x0 + i eps^{ijk} xk on the
// spatial block; the x0 row and column carry the radius coordinate.
BiDiffOp su2_generator() {
  auto table = VarTable::spacetime(3);
  BiDiffOp gen(table);
  const auto n = table->size();
  const Scalar half = Scalar::fraction(1, 2);
  auto x = [&](int mu) { return Poly::variable(table, static_cast<std::size_t>(mu)); };
  for (int mu = 0; mu <= 3; ++mu) {
    for (int nu = 0; nu <= 3; ++nu) {
      Poly c(table);
      if (mu == 0 && nu == 0) {
        c = x(0);
      } else if (mu == 0) {
        c = x(nu);
      } else if (nu == 0) {
        c = x(mu);
      } else {
        if (mu == nu) c += x(0);
        for (int k = 1; k <= 3; ++k) {
          int e = epsilon(mu, nu, k);
          if (e != 0) c += x(k) * (Scalar::i() * Scalar(e));
        }
      }
      gen.add_term(1, unit_index(n, mu), c * half, unit_index(n, nu));
    }
  }
  return gen;
}

}  // namespace

StarProduct build_star(StarKind kind, int d, std::optional<unsigned> cap) {
  if (kind != StarKind::su2 && d < 1) throw Error("dimension must be >= 1");
  switch (kind) {
    case StarKind::moyal: return exponential_star(kind, d, moyal_generator(d, true), cap);
    case StarKind::wick_voros: return exponential_star(kind, d, moyal_generator(d, false), cap);
    case StarKind::kappa: return exponential_star(kind, d, kappa_generator(d), cap);
    case StarKind::su2: return exponential_star(kind, 3, su2_generator(), cap);
    case StarKind::jordanian: return twist_star_product(TwistKind::jordanian, d, cap);
    case StarKind::jordanian_rs: return twist_star_product(TwistKind::jordanian_rs, d, cap);
    case StarKind::custom: break;
  }
  throw Error("unsupported star product kind '" + std::string(to_string(kind)) + "'");
}

ThetaSeries star_apply(const StarProduct& s, const Poly& f, const Poly& g) {
  require_same_table(s.table(), f.table(), "star product (left factor)");
  require_same_table(s.table(), g.table(), "star product (right factor)");
  if (s.evaluator()) return s.evaluator()(f, g, s.cap());
  ThetaSeries r(s.table(), s.cap());
  unsigned bound = s.order_bound(f, g);
  for (unsigned n = 0; n <= bound; ++n) r += apply(s.order(n), f, g, s.cap());
  return r;
}

ThetaSeries star_apply(const StarProduct& s, const ThetaSeries& f, const ThetaSeries& g) {
  auto cap = min_cap(s.cap(), min_cap(f.cap(), g.cap()));
  ThetaSeries r(s.table(), cap);
  for (const auto& [i, a] : f.coefficients()) {
    for (const auto& [j, b] : g.coefficients()) {
      if (cap && i + j > *cap) continue;
      ThetaSeries part = star_apply(s, a, b);
      for (const auto& [n, p] : part.coefficients()) r.add_to(i + j + n, p);
    }
  }
  return r;
}

ThetaSeries star_commutator(const StarProduct& s, const Poly& f, const Poly& g) {
  return star_apply(s, f, g) - star_apply(s, g, f);
}

Poly poisson_bracket(const Poly& f, const Poly& g, PoissonStructure structure) {
  require_same_table(f.table(), g.table(), "Poisson bracket");
  const auto& table = f.table();
  Poly r(table);
  if (structure == PoissonStructure::kappa_classical) {
    if (!table->is_spacetime()) throw Error("kappa_classical bracket needs spacetime variables");
    Poly f0 = partial(f, std::size_t{0});
    Poly g0 = partial(g, std::size_t{0});
    for (std::size_t k = 1; k < table->size(); ++k) {
      r += Poly::variable(table, k) * (f0 * partial(g, k) - partial(f, k) * g0);
    }
  } else {
    if (table->is_spacetime()) throw Error("canonical_z bracket needs z/zb variables");
    for (int i = 1; i <= table->dimension(); ++i) {
      r += partial(f, table->z(i)) * partial(g, table->zb(i)) -
           partial(f, table->zb(i)) * partial(g, table->z(i));
    }
  }
  return r * Scalar::i();
}

Verdict verify_associativity(const StarProduct& s, const Poly& f, const Poly& g, const Poly& h) {
  ThetaSeries fg = star_apply(s, f, g);
  ThetaSeries gh = star_apply(s, g, h);
  ThetaSeries lhs = star_apply(s, fg, ThetaSeries(h, s.cap()));
  ThetaSeries rhs = star_apply(s, ThetaSeries(f, s.cap()), gh);
  Verdict v = compare_series(lhs, rhs, [&s](const Poly& p) { return s.normal_form(p); });
  if (!v.holds) v.context = "f = " + f.to_string() + ", g = " + g.to_string() + ", h = " + h.to_string();
  return v;
}

ThetaSeries compare_moyal_reduction(const Poly& f, const Poly& g, int d) {
  Realization r = Realization::kappa(d);
  StarProduct moyal = build_star(StarKind::moyal, d);
  StarProduct kappa = build_star(StarKind::kappa, d);
  return star_apply(moyal, pullback(r, f), pullback(r, g)) - pullback(r, star_apply(kappa, f, g));
}

}  // namespace kstar
