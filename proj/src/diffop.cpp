#include "kstar/diffop.hpp"

namespace kstar {

namespace {

/// Calls fn(gamma) for every gamma <= alpha componentwise.
template <class Fn>
void for_each_subindex(const MultiIndex& alpha, Fn&& fn) {
  MultiIndex gamma(alpha.size(), 0);
  while (true) {
    fn(gamma);
    std::size_t k = 0;
    while (k < gamma.size() && gamma[k] == alpha[k]) {
      gamma[k] = 0;
      ++k;
    }
    if (k == gamma.size()) return;
    ++gamma[k];
  }
}

}  // namespace

DiffOp::DiffOp(TablePtr table) : table_(std::move(table)) {}

DiffOp DiffOp::identity(TablePtr table) {
  return multiplication(Poly::constant(std::move(table), 1));
}

DiffOp DiffOp::multiplication(const Poly& c) {
  DiffOp op(c.table());
  op.add_term(MultiIndex(c.table()->size(), 0), c);
  return op;
}

DiffOp DiffOp::derivative(TablePtr table, const MultiIndex& alpha) {
  DiffOp op(table);
  op.add_term(alpha, Poly::constant(table, 1));
  return op;
}

DiffOp DiffOp::derivative(TablePtr table, std::size_t slot, std::uint32_t power) {
  auto alpha = unit_index(table->size(), slot, power);
  return derivative(std::move(table), alpha);
}

DiffOp DiffOp::euler(TablePtr table) {
  DiffOp op(table);
  for (std::size_t k = 0; k < table->size(); ++k) {
    op.add_term(unit_index(table->size(), k), Poly::variable(table, k));
  }
  return op;
}

Poly DiffOp::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Poly(table_) : it->second;
}

void DiffOp::add_term(const MultiIndex& alpha, const Poly& c) {
  if (c.is_zero()) return;
  if (alpha.size() != table_->size()) throw Error("derivative multi-index has wrong length");
  require_same_table(table_, c.table(), "differential operator");
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
  return *this;
}

DiffOp& DiffOp::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, p] : terms_) p *= c;
  return *this;
}

DiffOp operator*(const DiffOp& a, const DiffOp& b) {
  require_same_table(a.table_, b.table_, "operator composition");
  DiffOp r(a.table_);
  // (a d^alpha)(b d^beta) = sum_{gamma <= alpha} C(alpha, gamma) a (d^{alpha-gamma} b) d^{beta+gamma}
  for (const auto& [alpha, ca] : a.terms_) {
    for (const auto& [beta, cb] : b.terms_) {
      for_each_subindex(alpha, [&](const MultiIndex& gamma) {
        Poly db = partial(cb, quotient(alpha, gamma));
        if (db.is_zero()) return;
        r.add_term(beta + gamma, ca * db * Scalar(multi_binomial(alpha, gamma)));
      });
    }
  }
  return r;
}

bool operator==(const DiffOp& a, const DiffOp& b) {
  return same_table(a.table_, b.table_) && a.terms_ == b.terms_;
}

std::string DiffOp::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [alpha, c] : terms_) {
    std::string deriv;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      if (alpha[k] == 0) continue;
      deriv += "*d_" + (*table_)[k].name;
      if (alpha[k] > 1) deriv += "^" + std::to_string(alpha[k]);
    }
    std::string term = "(" + c.to_string() + ")" + deriv;
    out += out.empty() ? term : " + " + term;
  }
  return out;
}

Poly apply(const DiffOp& op, const Poly& f) {
  require_same_table(op.table(), f.table(), "operator application");
  Poly r(f.table());
  for (const auto& [alpha, c] : op.terms()) {
    Poly df = partial(f, alpha);
    if (!df.is_zero()) r += c * df;
  }
  return r;
}

DiffOp compose(const DiffOp& a, const DiffOp& b) { return a * b; }

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return a * b - b * a; }

ThetaSeries apply(const ThetaDiffOp& op, const Poly& f) {
  ThetaSeries r(f.table(), op.cap());
  for (const auto& [n, part] : op.parts()) r.add_to(n, apply(part, f));
  return r;
}

ThetaDiffOp commutator(const ThetaDiffOp& a, const ThetaDiffOp& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------
// BiDiffOp

BiDiffOp::BiDiffOp(TablePtr table) : table_(std::move(table)) {}

void BiDiffOp::add_term(unsigned grade, const MultiIndex& left, const Poly& mid,
                        const MultiIndex& right) {
  if (mid.is_zero()) return;
  require_same_table(table_, mid.table(), "bidifferential operator");
  if (left.size() != table_->size() || right.size() != table_->size()) {
    throw Error("bidifferential multi-index has wrong length");
  }
  auto [it, inserted] = terms_.try_emplace(Key{grade, left, right}, mid);
  if (!inserted) {
    it->second += mid;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BiDiffOp& BiDiffOp::operator+=(const BiDiffOp& o) {
  for (const auto& [k, m] : o.terms_) add_term(k.grade, k.left, m, k.right);
  return *this;
}

BiDiffOp& BiDiffOp::operator-=(const BiDiffOp& o) {
  for (const auto& [k, m] : o.terms_) add_term(k.grade, k.left, -m, k.right);
  return *this;
}

BiDiffOp& BiDiffOp::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, m] : terms_) m *= c;
  return *this;
}

bool operator==(const BiDiffOp& a, const BiDiffOp& b) {
  return same_table(a.table_, b.table_) && a.terms_ == b.terms_;
}

BiDiffOp BiDiffOp::grade_part(unsigned grade) const {
  BiDiffOp r(table_);
  for (const auto& [k, m] : terms_) {
    if (k.grade == grade) r.terms_.emplace(k, m);
  }
  return r;
}

BiDiffOp BiDiffOp::swapped() const {
  BiDiffOp r(table_);
  for (const auto& [k, m] : terms_) r.add_term(k.grade, k.right, m, k.left);
  return r;
}

std::string BiDiffOp::to_string() const {
  if (terms_.empty()) return "0";
  auto deriv = [this](const MultiIndex& a) {
    std::string s;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] == 0) continue;
      if (!s.empty()) s += "*";
      s += "d_" + (*table_)[k].name;
      if (a[k] > 1) s += "^" + std::to_string(a[k]);
    }
    return s.empty() ? std::string("1") : s;
  };
  std::string out;
  for (const auto& [k, m] : terms_) {
    std::string term = "theta^" + std::to_string(k.grade) + "*[" + deriv(k.left) + " | " +
                       m.to_string() + " | " + deriv(k.right) + "]";
    out += out.empty() ? term : " + " + term;
  }
  return out;
}

BiDiffOp frozen_product(const BiDiffOp& a, const BiDiffOp& b) {
  require_same_table(a.table(), b.table(), "frozen product");
  BiDiffOp r(a.table());
  for (const auto& [ka, ma] : a.terms()) {
    for (const auto& [kb, mb] : b.terms()) {
      r.add_term(ka.grade + kb.grade, ka.left + kb.left, ma * mb, ka.right + kb.right);
    }
  }
  return r;
}

ThetaSeries apply(const BiDiffOp& op, const Poly& f, const Poly& g, std::optional<unsigned> cap) {
  require_same_table(op.table(), f.table(), "bidifferential application");
  require_same_table(op.table(), g.table(), "bidifferential application");
  ThetaSeries r(f.table(), cap);
  std::map<MultiIndex, Poly> df_cache;
  std::map<MultiIndex, Poly> dg_cache;
  auto cached = [](std::map<MultiIndex, Poly>& cache, const Poly& p, const MultiIndex& a) -> const Poly& {
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, partial(p, a)).first;
    return it->second;
  };
  for (const auto& [k, mid] : op.terms()) {
    if (cap && k.grade > *cap) continue;
    const Poly& df = cached(df_cache, f, k.left);
    if (df.is_zero()) continue;
    const Poly& dg = cached(dg_cache, g, k.right);
    if (dg.is_zero()) continue;
    r.add_to(k.grade, mid * df * dg);
  }
  return r;
}

}  // namespace kstar
