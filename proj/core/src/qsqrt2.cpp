#include "octic/qsqrt2.hpp"

#include <cmath>

#include "octic/error.hpp"

namespace octic {

QSqrt2& QSqrt2::operator+=(const QSqrt2& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QSqrt2& QSqrt2::operator-=(const QSqrt2& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QSqrt2& QSqrt2::operator*=(const QSqrt2& o) {
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rat a = a_ * o.a_ + 2 * b_ * o.b_;
  Rat b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QSqrt2 QSqrt2::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (sgn(b_) == 0) return QSqrt2(Rat(1) / a_);
  Rat n = norm();
  return {a_ / n, -b_ / n};
}

QSqrt2& QSqrt2::operator/=(const QSqrt2& o) {
  if (o.is_zero()) throw DivisionByZero();
  if (sgn(o.b_) == 0) {
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

int QSqrt2::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with 2 b^2
  int d = sgn(norm());
  return sa * d;
}

double QSqrt2::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(2.0); }

std::strong_ordering operator<=>(const QSqrt2& x, const QSqrt2& y) {
  int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string QSqrt2::to_string() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string out;
  if (sgn(a_) != 0) out = a_.get_str() + (sgn(b_) > 0 ? " + " : " - ");
  else if (sgn(b_) < 0)
    out = "-";
  Rat mag = abs(b_);
  if (mag != 1) out += mag.get_str() + "*";
  return out + "sqrt2";
}

std::optional<QSqrt2> sqrt_in_field(const QSqrt2& x) {
  if (x.sign() < 0) return std::nullopt;
  if (x.is_zero()) return QSqrt2();
  if (x.is_rational()) {
    if (auto r = rat_sqrt(x.a())) return QSqrt2(*r);
    if (auto r = rat_sqrt(x.a() / 2)) return QSqrt2(Rat(0), *r);
    return std::nullopt;
  }
  // (p + q sqrt2)^2 = p^2 + 2 q^2 + 2 p q sqrt2
  auto n = rat_sqrt(x.norm());
  if (!n) return std::nullopt;
  for (const Rat& s : {*n, Rat(-*n)}) {
    Rat half = (x.a() + s) / 2;
    auto p = rat_sqrt(half);
    if (!p || sgn(*p) == 0) continue;
    Rat q = x.b() / (2 * *p);
    QSqrt2 y(*p, q);
    if (y * y == x) return y.sign() < 0 ? -y : y;
  }
  return std::nullopt;
}

}  // namespace octic
