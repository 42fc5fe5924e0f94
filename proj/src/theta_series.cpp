#include "kstar/theta_series.hpp"

#include <algorithm>

namespace kstar {

std::optional<unsigned> min_cap(std::optional<unsigned> a, std::optional<unsigned> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

ThetaSeries::ThetaSeries(TablePtr table, std::optional<unsigned> cap)
    : table_(std::move(table)), cap_(cap) {}

ThetaSeries::ThetaSeries(const Poly& p, std::optional<unsigned> cap) : ThetaSeries(p.table(), cap) {
  add_to(0, p);
}

std::optional<unsigned> ThetaSeries::max_order() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.rbegin()->first;
}

Poly ThetaSeries::coefficient(unsigned order) const {
  auto it = coeffs_.find(order);
  return it == coeffs_.end() ? Poly(table_) : it->second;
}

void ThetaSeries::add_to(unsigned order, const Poly& p) {
  if (cap_ && order > *cap_) return;
  if (p.is_zero()) return;
  require_same_table(table_, p.table(), "theta series");
  auto [it, inserted] = coeffs_.try_emplace(order, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

ThetaSeries ThetaSeries::truncated(unsigned max_order) const {
  ThetaSeries r(table_, min_cap(cap_, max_order));
  for (const auto& [n, p] : coeffs_) r.add_to(n, p);
  return r;
}

ThetaSeries ThetaSeries::with_cap(std::optional<unsigned> cap) const {
  ThetaSeries r(table_, cap);
  for (const auto& [n, p] : coeffs_) r.add_to(n, p);
  return r;
}

ThetaSeries& ThetaSeries::operator+=(const ThetaSeries& o) {
  cap_ = min_cap(cap_, o.cap_);
  if (cap_) *this = truncated(*cap_);
  for (const auto& [n, p] : o.coeffs_) add_to(n, p);
  return *this;
}

ThetaSeries& ThetaSeries::operator-=(const ThetaSeries& o) { return *this += -o; }

ThetaSeries& ThetaSeries::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [n, p] : coeffs_) p *= c;
  return *this;
}

ThetaSeries operator*(const ThetaSeries& a, const ThetaSeries& b) {
  require_same_table(a.table_, b.table_, "theta series product");
  ThetaSeries r(a.table_, min_cap(a.cap_, b.cap_));
  for (const auto& [na, pa] : a.coeffs_) {
    for (const auto& [nb, pb] : b.coeffs_) {
      if (r.cap_ && na + nb > *r.cap_) continue;
      r.add_to(na + nb, pa * pb);
    }
  }
  return r;
}

ThetaSeries ThetaSeries::operator-() const {
  ThetaSeries r(*this);
  for (auto& [n, p] : r.coeffs_) p = -p;
  return r;
}

bool operator==(const ThetaSeries& a, const ThetaSeries& b) {
  return same_table(a.table_, b.table_) && a.coeffs_ == b.coeffs_;
}

std::string ThetaSeries::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [n, p] : coeffs_) {
    std::string term;
    if (n == 0) {
      term = p.to_string();
    } else {
      std::string power = n == 1 ? "theta" : "theta^" + std::to_string(n);
      term = power + "*(" + p.to_string() + ")";
    }
    out += out.empty() ? term : " + " + term;
  }
  return out;
}

}  // namespace kstar
