#include "kstar/poly.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace kstar {

unsigned total_degree(const MultiIndex& a) {
  return std::accumulate(a.begin(), a.end(), 0u);
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += b[k];
  return r;
}

bool divides(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
  }
  return true;
}

MultiIndex quotient(const MultiIndex& b, const MultiIndex& a) {
  MultiIndex r(b);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= a[k];
  return r;
}

MultiIndex unit_index(std::size_t size, std::size_t slot, std::uint32_t power) {
  MultiIndex r(size, 0);
  r[slot] = power;
  return r;
}

Rational multi_binomial(const MultiIndex& b, const MultiIndex& a) {
  mpz_class acc = 1;
  for (std::size_t k = 0; k < a.size(); ++k) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), b[k], a[k]);
    acc *= c;
  }
  return Rational(acc);
}

Rational multi_factorial(const MultiIndex& a) {
  mpz_class acc = 1;
  for (auto e : a) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), e);
    acc *= f;
  }
  return Rational(acc);
}

bool GrlexGreater::operator()(const MultiIndex& a, const MultiIndex& b) const {
  unsigned da = total_degree(a);
  unsigned db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

// ---------------------------------------------------------------------------
// VarTable

VarTable::VarTable(bool spacetime, int d) : spacetime_(spacetime), dimension_(d) {
  if (spacetime) {
    for (int mu = 0; mu <= d; ++mu) {
      vars_.push_back({"x" + std::to_string(mu), VarKind::spacetime, mu});
    }
  } else {
    for (int i = 1; i <= d; ++i) {
      vars_.push_back({"z" + std::to_string(i), VarKind::holomorphic, i});
    }
    for (int i = 1; i <= d; ++i) {
      vars_.push_back({"zb" + std::to_string(i), VarKind::antiholomorphic, i});
    }
  }
}

namespace {

TablePtr cached_table(bool spacetime, int d) {
  if (d < 1) throw Error("dimension must be >= 1, got " + std::to_string(d));
  static std::mutex mutex;
  static std::map<std::pair<bool, int>, TablePtr> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{spacetime, d}];
  if (!slot) slot = std::make_shared<const VarTable>(spacetime, d);
  return slot;
}

}  // namespace

TablePtr VarTable::spacetime(int d) { return cached_table(true, d); }
TablePtr VarTable::phase_space(int d) { return cached_table(false, d); }

std::optional<std::size_t> VarTable::find(std::string_view name) const {
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    if (vars_[k].name == name) return k;
  }
  return std::nullopt;
}

std::size_t VarTable::index_of(std::string_view name) const {
  auto k = find(name);
  if (!k) throw Error("unknown variable '" + std::string(name) + "'");
  return *k;
}

std::size_t VarTable::z(int i) const {
  if (spacetime_ || i < 1 || i > dimension_) throw Error("no z" + std::to_string(i) + " in table");
  return static_cast<std::size_t>(i - 1);
}

std::size_t VarTable::zb(int i) const {
  if (spacetime_ || i < 1 || i > dimension_) throw Error("no zb" + std::to_string(i) + " in table");
  return static_cast<std::size_t>(dimension_ + i - 1);
}

bool same_table(const TablePtr& a, const TablePtr& b) { return a == b || *a == *b; }

void require_same_table(const TablePtr& a, const TablePtr& b, const char* what) {
  if (!same_table(a, b)) throw Error(std::string("mismatched variable tables in ") + what);
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(TablePtr table) : table_(std::move(table)) {}

Poly Poly::constant(TablePtr table, const Scalar& c) {
  Poly p(table);
  p.add_term(MultiIndex(table->size(), 0), c);
  return p;
}

Poly Poly::variable(TablePtr table, std::size_t slot) {
  if (slot >= table->size()) throw Error("variable slot out of range");
  Poly p(table);
  p.add_term(unit_index(table->size(), slot), 1);
  return p;
}

Poly Poly::variable(TablePtr table, std::string_view name) {
  auto slot = table->index_of(name);
  return variable(std::move(table), slot);
}

Poly Poly::monomial(TablePtr table, MultiIndex exponents, const Scalar& c) {
  if (exponents.size() != table->size()) throw Error("exponent vector has wrong length");
  Poly p(std::move(table));
  p.add_term(exponents, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.begin()->first));
}

Scalar Poly::coefficient(const MultiIndex& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

void Poly::add_term(const MultiIndex& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  require_same_table(table_, o.table_, "polynomial addition");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_table(table_, o.table_, "polynomial subtraction");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_table(a.table_, b.table_, "polynomial multiplication");
  Poly r(a.table_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  return same_table(a.table_, b.table_) && a.terms_ == b.terms_;
}

std::string monomial_to_string(const VarTable& table, const MultiIndex& m) {
  std::string out;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += table[k].name;
    if (m[k] > 1) out += "^" + std::to_string(m[k]);
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string mono = monomial_to_string(*table_, m);
    std::string term;
    if (mono.empty()) {
      term = c.to_string();
    } else if (c.is_one()) {
      term = mono;
    } else if (c == Scalar(-1)) {
      term = "-" + mono;
    } else {
      term = c.to_string() + "*" + mono;
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

Poly pow(const Poly& p, unsigned n) {
  Poly r = Poly::constant(p.table(), 1);
  Poly base = p;
  while (n > 0) {
    if (n & 1u) r *= base;
    n >>= 1u;
    if (n > 0) base *= base;
  }
  return r;
}

Poly partial(const Poly& p, std::size_t slot) {
  if (slot >= p.table()->size()) throw Error("derivative variable slot out of range");
  Poly r(p.table());
  for (const auto& [m, c] : p.terms()) {
    if (m[slot] == 0) continue;
    MultiIndex dm(m);
    --dm[slot];
    r.add_term(dm, c * Scalar(static_cast<long>(m[slot])));
  }
  return r;
}

Poly partial(const Poly& p, std::string_view name) { return partial(p, p.table()->index_of(name)); }

Poly partial(const Poly& p, const MultiIndex& alpha) {
  if (alpha.size() != p.table()->size()) throw Error("derivative multi-index has wrong length");
  Poly r(p.table());
  for (const auto& [m, c] : p.terms()) {
    if (!divides(alpha, m)) continue;
    // m!/(m-alpha)! = alpha! * binomial(m, alpha)
    Rational factor = multi_binomial(m, alpha) * multi_factorial(alpha);
    r.add_term(quotient(m, alpha), c * Scalar(factor));
  }
  return r;
}

Poly substitute(const Poly& p, const Substitution& images, const TablePtr& target) {
  for (const auto& [slot, image] : images) {
    require_same_table(image.table(), target, "substitution");
  }
  const std::size_t n = p.table()->size();
  std::vector<std::vector<Poly>> powers(n);
  auto power_of = [&](std::size_t slot, std::uint32_t e) -> const Poly& {
    auto it = images.find(slot);
    if (it == images.end()) {
      throw Error("substitution has no image for variable '" + (*p.table())[slot].name + "'");
    }
    auto& cache = powers[slot];
    if (cache.empty()) cache.push_back(Poly::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * it->second);
    return cache[e];
  };
  Poly r(target);
  for (const auto& [m, c] : p.terms()) {
    Poly term = Poly::constant(target, c);
    for (std::size_t k = 0; k < n; ++k) {
      if (m[k] > 0) term *= power_of(k, m[k]);
    }
    r += term;
  }
  return r;
}

MultiIndex monomial_content(const Poly& p) {
  MultiIndex g(p.table()->size(), 0);
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (first) {
      g = m;
      first = false;
    } else {
      for (std::size_t k = 0; k < g.size(); ++k) g[k] = std::min(g[k], m[k]);
    }
  }
  return g;
}

Poly divide_by_monomial(const Poly& p, const MultiIndex& m) {
  Poly r(p.table());
  for (const auto& [t, c] : p.terms()) {
    if (!divides(m, t)) throw Error("monomial does not divide polynomial");
    r.add_term(quotient(t, m), c);
  }
  return r;
}

std::vector<MultiIndex> monomials_up_to(std::size_t nvars, unsigned max_degree) {
  std::vector<MultiIndex> out;
  MultiIndex current(nvars, 0);
  // Fill slots left to right with every composition of `remaining`.
  auto fill = [&](auto&& self, std::size_t slot, unsigned remaining) -> void {
    if (slot + 1 == nvars) {
      current[slot] = remaining;
      out.push_back(current);
      return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
      current[slot] = e;
      self(self, slot + 1, remaining - e);
    }
  };
  for (unsigned deg = 0; deg <= max_degree; ++deg) fill(fill, 0, deg);
  return out;
}

}  // namespace kstar
