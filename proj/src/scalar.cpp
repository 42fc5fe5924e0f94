#include "kstar/scalar.hpp"

namespace kstar {

Scalar Scalar::fraction(long num, long den) {
  if (den == 0) throw Error("zero denominator in rational literal");
  Rational q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero scalar");
  Rational norm = re_ * re_ + im_ * im_;
  return {re_ / norm, -im_ / norm};
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

std::string Scalar::to_string() const {
  if (is_real()) return rational_to_string(re_);
  auto imag_part = [](const Rational& v) {
    if (v == 1) return std::string("i");
    if (v == -1) return std::string("-i");
    return rational_to_string(v) + "*i";
  };
  if (sgn(re_) == 0) return imag_part(im_);
  std::string out = "(" + rational_to_string(re_);
  if (sgn(im_) > 0) {
    out += "+" + imag_part(im_);
  } else {
    out += imag_part(im_);
  }
  return out + ")";
}

}  // namespace kstar
