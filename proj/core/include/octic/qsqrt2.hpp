#pragma once

#include <compare>
#include <optional>
#include <string>

#include "octic/rational.hpp"

namespace octic {

/// Element a + b*sqrt(2) of the real quadratic field Q(sqrt 2), ordered through
/// the embedding with sqrt(2) > 0.
class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rat a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}

  static QSqrt2 sqrt2() { return {Rat(0), Rat(1)}; }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  QSqrt2 conj() const { return {a_, -b_}; }
  /// a^2 - 2 b^2.
  Rat norm() const { return a_ * a_ - 2 * b_ * b_; }
  QSqrt2 inverse() const;

  /// -1, 0 or +1 under the real embedding; exact.
  int sign() const;
  double to_double() const;

  QSqrt2& operator+=(const QSqrt2& o);
  QSqrt2& operator-=(const QSqrt2& o);
  QSqrt2& operator*=(const QSqrt2& o);
  QSqrt2& operator/=(const QSqrt2& o);

  friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
  friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
  friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }
  friend QSqrt2 operator/(QSqrt2 x, const QSqrt2& y) { return x /= y; }
  QSqrt2 operator-() const { return {-a_, -b_}; }

  friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend std::strong_ordering operator<=>(const QSqrt2& x, const QSqrt2& y);

  /// Human-readable form such as "-1/4 - 1/4*sqrt2".
  std::string to_string() const;

 private:
  Rat a_;
  Rat b_;
};

inline bool is_zero(const QSqrt2& x) { return x.is_zero(); }
inline int sign(const QSqrt2& x) { return x.sign(); }

/// Nonnegative square root inside Q(sqrt 2), if x is a square there.
std::optional<QSqrt2> sqrt_in_field(const QSqrt2& x);

}  // namespace octic
