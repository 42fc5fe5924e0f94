#include "kstar/rational_fn.hpp"

namespace kstar {

RationalFn::RationalFn(Poly num) : num_(num), den_(Poly::constant(num.table(), 1)) {}

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  require_same_table(num_.table(), den_.table(), "rational function");
  if (den_.is_zero()) throw Error("rational function with zero denominator");
  normalize();
}

void RationalFn::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.table(), 1);
    return;
  }
  MultiIndex common = monomial_content(den_);
  MultiIndex num_content = monomial_content(num_);
  for (std::size_t k = 0; k < common.size(); ++k) common[k] = std::min(common[k], num_content[k]);
  if (total_degree(common) > 0) {
    num_ = divide_by_monomial(num_, common);
    den_ = divide_by_monomial(den_, common);
  }
  Scalar lead = den_.terms().begin()->second;
  if (!lead.is_one()) {
    Scalar inv = lead.inverse();
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn& RationalFn::operator*=(const RationalFn& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalFn& RationalFn::operator/=(const RationalFn& o) {
  if (o.is_zero()) throw Error("division by zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

bool operator==(const RationalFn& a, const RationalFn& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RationalFn::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalFn partial(const RationalFn& h, std::size_t slot) {
  const Poly& n = h.num();
  const Poly& d = h.den();
  return RationalFn(partial(n, slot) * d - n * partial(d, slot), d * d);
}

RationalFn partial(const RationalFn& h, const MultiIndex& alpha) {
  RationalFn r = h;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    for (std::uint32_t e = 0; e < alpha[k]; ++e) r = partial(r, k);
  }
  return r;
}

}  // namespace kstar
