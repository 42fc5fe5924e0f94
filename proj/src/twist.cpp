#include "kstar/twist.hpp"

namespace kstar {

// ---------------------------------------------------------------------------
// TensorOp

TensorOp::TensorOp(TablePtr table) : table_(std::move(table)) {}

TensorOp TensorOp::tensor(const DiffOp& left, const DiffOp& right) {
  require_same_table(left.table(), right.table(), "tensor product");
  TensorOp r(left.table());
  for (const auto& [alpha, a] : left.terms()) {
    for (const auto& [p, ca] : a.terms()) {
      for (const auto& [beta, b] : right.terms()) {
        for (const auto& [q, cb] : b.terms()) r.add_term(Key{p, alpha, q, beta}, ca * cb);
      }
    }
  }
  return r;
}

TensorOp TensorOp::identity(const TablePtr& table) {
  return tensor(DiffOp::identity(table), DiffOp::identity(table));
}

void TensorOp::add_term(const Key& key, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorOp& TensorOp::operator+=(const TensorOp& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TensorOp& TensorOp::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

namespace {

struct LegKey {
  MultiIndex mono_a, deriv_a, mono_b, deriv_b;
  friend auto operator<=>(const LegKey&, const LegKey&) = default;
};

DiffOp monomial_op(const TablePtr& table, const MultiIndex& mono, const MultiIndex& deriv) {
  DiffOp op(table);
  op.add_term(deriv, Poly::monomial(table, mono));
  return op;
}

}  // namespace

TensorOp operator*(const TensorOp& a, const TensorOp& b) {
  require_same_table(a.table_, b.table_, "tensor composition");
  const auto& table = a.table_;
  std::map<LegKey, DiffOp> memo;
  auto leg = [&](const MultiIndex& ma, const MultiIndex& da, const MultiIndex& mb,
                 const MultiIndex& db) -> const DiffOp& {
    LegKey key{ma, da, mb, db};
    auto it = memo.find(key);
    if (it == memo.end()) {
      it = memo.emplace(key, monomial_op(table, ma, da) * monomial_op(table, mb, db)).first;
    }
    return it->second;
  };
  TensorOp r(table);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      const DiffOp& left = leg(ka.left_mono, ka.left_deriv, kb.left_mono, kb.left_deriv);
      const DiffOp& right = leg(ka.right_mono, ka.right_deriv, kb.right_mono, kb.right_deriv);
      Scalar c = ca * cb;
      for (const auto& [alpha, pa] : left.terms()) {
        for (const auto& [p, sa] : pa.terms()) {
          for (const auto& [beta, pb] : right.terms()) {
            for (const auto& [q, sb] : pb.terms()) {
              r.add_term(TensorOp::Key{p, alpha, q, beta}, c * sa * sb);
            }
          }
        }
      }
    }
  }
  return r;
}

TensorOp TensorOp::flipped() const {
  TensorOp r(table_);
  for (const auto& [k, c] : terms_) r.add_term(Key{k.right_mono, k.right_deriv, k.left_mono, k.left_deriv}, c);
  return r;
}

BiDiffOp TensorOp::multiply_legs(unsigned grade) const {
  BiDiffOp r(table_);
  for (const auto& [k, c] : terms_) {
    r.add_term(grade, k.left_deriv, Poly::monomial(table_, k.left_mono + k.right_mono, c), k.right_deriv);
  }
  return r;
}

std::string TensorOp::to_string() const {
  if (terms_.empty()) return "0";
  auto leg = [this](const MultiIndex& mono, const MultiIndex& deriv) {
    std::string s = monomial_to_string(*table_, mono);
    for (std::size_t k = 0; k < deriv.size(); ++k) {
      if (deriv[k] == 0) continue;
      if (!s.empty()) s += "*";
      s += "d_" + (*table_)[k].name;
      if (deriv[k] > 1) s += "^" + std::to_string(deriv[k]);
    }
    return s.empty() ? std::string("1") : s;
  };
  std::string out;
  for (const auto& [k, c] : terms_) {
    std::string term = c.to_string() + "*[" + leg(k.left_mono, k.left_deriv) + " (x) " +
                       leg(k.right_mono, k.right_deriv) + "]";
    out += out.empty() ? term : " + " + term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Twist construction

DiffOp falling_factorial_op(const TablePtr& table, unsigned n) {
  DiffOp euler = DiffOp::euler(table);
  DiffOp result = DiffOp::identity(table);
  for (unsigned j = 0; j < n; ++j) {
    result = result * (euler - DiffOp::identity(table) * Scalar(static_cast<long>(j)));
  }
  return result;
}

DiffOp pure_order_op(const TablePtr& table, unsigned n) {
  DiffOp op(table);
  mpz_class nfact;
  mpz_fac_ui(nfact.get_mpz_t(), n);
  for (const auto& alpha : monomials_up_to(table->size(), n)) {
    if (total_degree(alpha) != n) continue;
    Rational c = Rational(nfact) / multi_factorial(alpha);
    op.add_term(alpha, Poly::monomial(table, alpha, Scalar(c)));
  }
  return op;
}

namespace {

Graded<TensorOp> jordanian_inverse(const TablePtr& table, unsigned max_order) {
  Graded<TensorOp> series(table, max_order);
  DiffOp euler = DiffOp::euler(table);
  DiffOp falling = DiffOp::identity(table);
  DiffOp d0_power = DiffOp::identity(table);
  DiffOp d0 = DiffOp::derivative(table, 0);
  Rational inv_factorial(1);
  for (unsigned n = 0; n <= max_order; ++n) {
    if (n > 0) {
      falling = falling * (euler - DiffOp::identity(table) * Scalar(static_cast<long>(n - 1)));
      d0_power = d0_power * d0;
      inv_factorial /= n;
    }
    series.add(n, TensorOp::tensor(d0_power, falling) * Scalar(inv_factorial));
  }
  return series;
}

Graded<TensorOp> rs_inverse(const TablePtr& table, unsigned max_order) {
  DiffOp one = DiffOp::identity(table);
  DiffOp d0 = DiffOp::derivative(table, 0);
  DiffOp euler = DiffOp::euler(table);
  DiffOp euler_d0 = euler * d0;
  const Scalar half = Scalar::fraction(1, 2);

  TensorOp outer_left = TensorOp::tensor(euler_d0, one) + TensorOp::tensor(euler, d0) +
                        TensorOp::tensor(d0, euler) + TensorOp::tensor(one, euler_d0);
  TensorOp outer_right = TensorOp::tensor(euler_d0, one) + TensorOp::tensor(one, euler_d0);

  Graded<TensorOp> left_exponent(outer_left * (-half), 1, max_order);
  Graded<TensorOp> right_exponent(outer_right * half, 1, max_order);
  TensorOp unit = TensorOp::identity(table);

  return graded_exp(left_exponent, unit, max_order) * jordanian_inverse(table, max_order) *
         graded_exp(right_exponent, unit, max_order);
}

}  // namespace

TwistSeries build_twist(TwistKind kind, int d, unsigned max_order) {
  auto table = VarTable::spacetime(d);
  if (kind == TwistKind::jordanian) return {kind, d, jordanian_inverse(table, max_order)};
  return {kind, d, rs_inverse(table, max_order)};
}

ThetaSeries star_from_twist(const TwistSeries& t, const Poly& f, const Poly& g) {
  ThetaSeries r(f.table());
  for (const auto& [n, part] : t.terms.parts()) r += apply(part.multiply_legs(n), f, g);
  return r;
}

namespace {

// Sums of c x^a (x) x^b, one map per theta-grade.
using PairPoly = std::map<std::pair<MultiIndex, MultiIndex>, Scalar>;
using GradedPairs = std::map<unsigned, PairPoly>;

void pair_add(GradedPairs& g, unsigned grade, const MultiIndex& a, const MultiIndex& b, const Scalar& c,
              std::optional<unsigned> cap) {
  if (c.is_zero() || (cap && grade > *cap)) return;
  auto& part = g[grade];
  auto [it, fresh] = part.try_emplace({a, b}, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) part.erase(it);
}

MultiIndex lower0(MultiIndex m, std::uint32_t by = 1) {
  m[0] -= by;
  return m;
}

// exp(theta/2 E d0) x^m: each step multiplies by m0 (|m| - 1) and lowers m0.
std::vector<std::pair<Rational, MultiIndex>> half_euler_d0_exp(const MultiIndex& m) {
  std::vector<std::pair<Rational, MultiIndex>> r{{Rational(1), m}};
  MultiIndex cur = m;
  Rational c(1);
  for (unsigned k = 1; cur[0] > 0; ++k) {
    c *= Rational(cur[0] * (total_degree(cur) - 1)) / Rational(2 * k);
    cur = lower0(cur);
    r.emplace_back(c, cur);
  }
  return r;
}

Rational falling(unsigned top, unsigned n) {
  Rational r(1);
  for (unsigned j = 0; j < n; ++j) {
    if (top < j) return 0;
    r *= top - j;
  }
  return r;
}

// sum_n theta^n/n! d0^n (x) E(E-1)...(E-n+1), on monomial pairs.
GradedPairs act_jordanian(const GradedPairs& in, std::optional<unsigned> cap) {
  GradedPairs out;
  for (const auto& [grade, part] : in) {
    for (const auto& [key, c] : part) {
      const auto& [a, b] = key;
      const unsigned deg_b = total_degree(b);
      Rational n_factorial(1);
      for (unsigned n = 0; n <= a[0]; ++n) {
        if (n > 0) n_factorial *= n;
        // d0^n x^a = a0!/(a0-n)! x^(a - n e0), E eigenvalue on x^b is |b|
        Rational w = falling(a[0], n) * falling(deg_b, n) / n_factorial;
        if (w == 0) break;
        pair_add(out, grade + n, lower0(a, n), b, c * Scalar(w), cap);
      }
    }
  }
  return out;
}

GradedPairs act_right_exponential(const GradedPairs& in, std::optional<unsigned> cap) {
  GradedPairs out;
  for (const auto& [grade, part] : in) {
    for (const auto& [key, c] : part) {
      auto left = half_euler_d0_exp(key.first);
      auto right = half_euler_d0_exp(key.second);
      for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = 0; j < right.size(); ++j) {
          pair_add(out, grade + static_cast<unsigned>(i + j), left[i].second, right[j].second,
                   c * Scalar(left[i].first * right[j].first), cap);
        }
      }
    }
  }
  return out;
}

// exp(-theta/2 A), A = E d0 (x) 1 + E (x) d0 + d0 (x) E + 1 (x) E d0. Every
// term of A lowers the total x0-degree, so the series stops.
GradedPairs act_left_exponential(const GradedPairs& in, std::optional<unsigned> cap) {
  GradedPairs out = in;
  GradedPairs cur = in;
  for (unsigned k = 1; !cur.empty(); ++k) {
    GradedPairs next;
    const Scalar w = Scalar::fraction(-1, 2) * Scalar(Rational(1, k));
    for (const auto& [grade, part] : cur) {
      for (const auto& [key, c] : part) {
        const auto& [a, b] = key;
        const long da = total_degree(a);
        const long db = total_degree(b);
        if (a[0] > 0) {
          pair_add(next, grade + 1, lower0(a), b, c * w * Scalar(static_cast<long>(a[0]) * (da - 1 + db)), cap);
        }
        if (b[0] > 0) {
          pair_add(next, grade + 1, a, lower0(b), c * w * Scalar(static_cast<long>(b[0]) * (da + db - 1)), cap);
        }
      }
    }
    std::erase_if(next, [](const auto& t) { return t.second.empty(); });
    for (const auto& [grade, part] : next) {
      for (const auto& [key, c] : part) pair_add(out, grade, key.first, key.second, c, cap);
    }
    cur = std::move(next);
  }
  return out;
}

}  // namespace

ThetaSeries twist_act(TwistKind kind, const Poly& f, const Poly& g, std::optional<unsigned> cap) {
  require_same_table(f.table(), g.table(), "twist action");
  const auto& table = f.table();
  GradedPairs pairs;
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) pair_add(pairs, 0, a, b, ca * cb, cap);
  }
  if (kind == TwistKind::jordanian_rs) pairs = act_right_exponential(pairs, cap);
  pairs = act_jordanian(pairs, cap);
  if (kind == TwistKind::jordanian_rs) pairs = act_left_exponential(pairs, cap);
  ThetaSeries r(table, cap);
  for (const auto& [grade, part] : pairs) {
    Poly p(table);
    for (const auto& [key, c] : part) p.add_term(key.first + key.second, c);
    r.add_to(grade, p);
  }
  return r;
}

StarProduct twist_star_product(TwistKind kind, int d, std::optional<unsigned> cap) {
  auto table = VarTable::spacetime(d);
  auto source = [kind, d](unsigned max_order) {
    TwistSeries t = build_twist(kind, d, max_order);
    std::vector<BiDiffOp> orders;
    for (unsigned n = 0; n <= max_order; ++n) orders.push_back(t.terms.part(n).multiply_legs(n));
    return orders;
  };
  auto evaluator = [kind](const Poly& f, const Poly& g, std::optional<unsigned> c) {
    return twist_act(kind, f, g, c);
  };
  const bool rs = kind == TwistKind::jordanian_rs;
  StarProduct s(rs ? StarKind::jordanian_rs : StarKind::jordanian, d, table, source,
                rs ? StarProduct::Reach::sum_degree : StarProduct::Reach::min_degree, cap);
  return s.with_evaluator(evaluator);
}

Verdict verify_lemma2(const TwistSeries& t, int d, unsigned max_degree) {
  auto table = VarTable::spacetime(d);
  StarProduct kappa = build_star(StarKind::kappa, d);
  auto monomials = monomials_up_to(table->size(), max_degree);
  Verdict total;
  for (const auto& a : monomials) {
    for (const auto& b : monomials) {
      if (total_degree(a) + total_degree(b) > max_degree) continue;
      Poly f = Poly::monomial(table, a);
      Poly g = Poly::monomial(table, b);
      accumulate(total, compare_series(star_from_twist(t, f, g), star_apply(kappa, f, g)),
                 "f = " + f.to_string() + ", g = " + g.to_string());
    }
  }
  return total;
}

Verdict verify_lemma2(int d, unsigned max_degree) {
  return verify_lemma2(build_twist(TwistKind::jordanian, d, max_degree), d, max_degree);
}

// ---------------------------------------------------------------------------
// Forms

WedgeResult wedge_star(std::size_t mu, std::size_t nu, int d, unsigned order) {
  auto table = VarTable::spacetime(d);
  if (mu >= table->size() || nu >= table->size()) throw Error("wedge index out of range");
  VectorField d0 = VectorField::coordinate(table, 0);
  VectorField euler = VectorField::euler(table);
  WedgeResult result{{}, wedge(OneForm::basis(table, mu), OneForm::basis(table, nu)), true};
  Rational inv_factorial(1);
  for (unsigned n = 0; n <= order; ++n) {
    // theta^n/n! L_{d0}^n dx^mu  ^  L_E (L_E - 1) ... (L_E - n + 1) dx^nu
    OneForm left = OneForm::basis(table, mu);
    OneForm right = OneForm::basis(table, nu);
    for (unsigned j = 0; j < n; ++j) {
      left = lie_derivative(d0, left);
      right = lie_derivative(euler, right) + right * Scalar(-static_cast<long>(j));
    }
    if (n > 0) inv_factorial /= n;
    TwoForm part = wedge(left * Scalar(inv_factorial), right);
    bool expected = n == 0 ? part == result.undeformed : part.is_zero();
    result.matches_undeformed = result.matches_undeformed && expected;
    result.by_order.push_back(std::move(part));
  }
  return result;
}

BiDiffOp rs_printed_first_order(const TablePtr& table) {
  BiDiffOp op(table);
  const auto n = table->size();
  const Scalar half = Scalar::fraction(1, 2);
  for (std::size_t mu = 0; mu < n; ++mu) {
    Poly x = Poly::variable(table, mu) * half;
    op.add_term(1, unit_index(n, 0), x, unit_index(n, mu));
    op.add_term(1, unit_index(n, mu), -x, unit_index(n, 0));
  }
  return op;
}

BiDiffOp rs_printed_second_order(const TablePtr& table) {
  BiDiffOp op(table);
  const auto n = table->size();
  MultiIndex none(n, 0);
  auto e = [n](std::size_t k, std::uint32_t p = 1) { return unit_index(n, k, p); };
  const MultiIndex d0 = e(0);
  const MultiIndex d00 = e(0, 2);
  // Overall (theta/2)^2 * 1/2.
  const Scalar pref = Scalar::fraction(1, 8);
  for (std::size_t rho = 0; rho < n; ++rho) {
    for (std::size_t mu = 0; mu < n; ++mu) {
      Poly c = Poly::variable(table, mu) * Poly::variable(table, rho) * pref;
      MultiIndex rm = e(rho) + e(mu);
      op.add_term(2, rm + d00, c, none);
      op.add_term(2, none, c, rm + d00);
      op.add_term(2, rm, c * Scalar(2), d00);
      op.add_term(2, d00, c * Scalar(2), rm);
      op.add_term(2, d0, c * Scalar(2), rm + d0);
      op.add_term(2, rm + d0, c * Scalar(2), d0);
      op.add_term(2, e(rho) + d0, c * Scalar(2), d0 + e(mu));
      op.add_term(2, e(rho) + d00, c * Scalar(2), e(mu));
      op.add_term(2, e(rho), c * Scalar(2), e(mu) + d00);
    }
    // The printed bracket carries x^mu against d_rho; read as x^rho.
    Poly c = Poly::variable(table, rho) * pref * Scalar(2);
    op.add_term(2, e(rho) + d0, c, d0);
    op.add_term(2, d0, c, e(rho) + d0);
    op.add_term(2, d00, c * Scalar(3), e(rho));
    op.add_term(2, e(rho), c, d00);
    op.add_term(2, e(rho) + d00, c, none);
    op.add_term(2, none, c, e(rho) + d00);
  }
  return op;
}

RsExpansion expand_rs_product(const Poly& f, const Poly& g) {
  const auto& table = f.table();
  StarProduct rs = twist_star_product(TwistKind::jordanian_rs, table->dimension(), 2);
  ThetaSeries series = star_apply(rs, f, g);
  Poly first = apply(rs_printed_first_order(table), f, g).coefficient(1);
  Poly second = apply(rs_printed_second_order(table), f, g).coefficient(2);
  return RsExpansion{series, first, series.coefficient(1) == first, second,
                     series.coefficient(2) - second};
}

}  // namespace kstar
