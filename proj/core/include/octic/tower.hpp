#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "octic/qsqrt2.hpp"

namespace octic {

class Tower;
/// nullptr denotes the base field Q(sqrt 2).
using TowerPtr = std::shared_ptr<const Tower>;

/// Element of an iterated real quadratic extension Q(sqrt2)(sqrt r1)...(sqrt rk).
///
/// Coefficients are stored densely over Q(sqrt 2) in the basis of products of
/// the adjoined roots; bit j of the index selects sqrt(r_{j+1}). Elements are
/// kept at their minimal trailing level: an element that does not use the top
/// root lives in the parent tower. Arithmetic between elements of a tower and
/// one of its prefixes embeds canonically; anything else raises FieldMismatch.
class TowerElem {
 public:
  TowerElem() : c_(1) {}
  TowerElem(long v) : c_{QSqrt2(v)} {}              // NOLINT(google-explicit-constructor)
  TowerElem(const Rat& v) : c_{QSqrt2(v)} {}        // NOLINT(google-explicit-constructor)
  TowerElem(const QSqrt2& v) : c_{v} {}             // NOLINT(google-explicit-constructor)

  /// Builds an element from its coefficient vector (size 2^depth) and normalizes.
  static TowerElem from_coeffs(TowerPtr tower, std::vector<QSqrt2> coeffs);
  /// The adjoined root sqrt(r_k) of the top level of `tower`.
  static TowerElem top_root(const TowerPtr& tower);

  const TowerPtr& tower() const { return tower_; }
  int depth() const;
  const std::vector<QSqrt2>& coeffs() const { return c_; }

  bool is_zero() const;
  bool in_base() const { return !tower_; }
  /// Value as a Q(sqrt 2) element; requires in_base().
  const QSqrt2& base_value() const;

  /// Coefficient vector after embedding into `target` (which must extend this element's tower).
  std::vector<QSqrt2> coeffs_in(const TowerPtr& target) const;

  int sign() const;
  double to_double() const;
  TowerElem inverse() const;

  TowerElem& operator+=(const TowerElem& o);
  TowerElem& operator-=(const TowerElem& o);
  TowerElem& operator*=(const TowerElem& o);
  TowerElem& operator/=(const TowerElem& o);
  friend TowerElem operator+(TowerElem x, const TowerElem& y) { return x += y; }
  friend TowerElem operator-(TowerElem x, const TowerElem& y) { return x -= y; }
  friend TowerElem operator*(TowerElem x, const TowerElem& y) { return x *= y; }
  friend TowerElem operator/(TowerElem x, const TowerElem& y) { return x /= y; }
  TowerElem operator-() const;

  /// Exact equality; requires a common field (FieldMismatch otherwise).
  friend bool operator==(const TowerElem& x, const TowerElem& y);

  std::string to_string() const;

 private:
  void normalize();

  TowerPtr tower_;
  std::vector<QSqrt2> c_;
};

/// One level of a tower: the parent field and the radicand adjoined on top.
class Tower {
 public:
  /// Adjoins sqrt(radicand) to the field `parent`. The radicand must lie in
  /// `parent` (or a prefix), be positive, and not be a square in `parent`.
  static TowerPtr extend(const TowerPtr& parent, const TowerElem& radicand);

  const TowerPtr& parent() const { return parent_; }
  const TowerElem& radicand() const { return radicand_; }
  /// Radicand coefficients at the parent's level.
  const std::vector<QSqrt2>& radicand_coeffs() const { return radicand_coeffs_; }
  int depth() const { return depth_; }

  /// Radicands from the bottom level up.
  std::vector<TowerElem> radicands() const;

 private:
  Tower(TowerPtr parent, TowerElem radicand);

  TowerPtr parent_;
  TowerElem radicand_;
  std::vector<QSqrt2> radicand_coeffs_;
  int depth_;
};

int tower_depth(const TowerPtr& t);
/// Structural equality of two towers (same radicands level by level).
bool same_tower(const TowerPtr& a, const TowerPtr& b);
/// True iff `a` is (structurally) a prefix of `b`.
bool is_prefix(const TowerPtr& a, const TowerPtr& b);
/// The larger of two towers when one is a prefix of the other; FieldMismatch otherwise.
TowerPtr common_tower(const TowerPtr& a, const TowerPtr& b);

inline bool is_zero(const TowerElem& x) { return x.is_zero(); }
inline int sign(const TowerElem& x) { return x.sign(); }

enum class Ordering { less, equal, greater };
/// Total order under the real embedding. Exact: signs are decided recursively
/// level by level, so no precision bound is needed.
Ordering compare(const TowerElem& x, const TowerElem& y);

/// Closed rational interval.
struct Interval {
  Rat lo;
  Rat hi;
  Rat width() const { return hi - lo; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  bool overlaps(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
};

/// Certified enclosure of x of width <= `width` / 4. Intervals are cut from the
/// dyadic subdivision of [floor(x), floor(x)+1], so shrinking widths nest.
Interval to_interval(const TowerElem& x, const Rat& width);

/// Nonnegative square root of x inside x's own field, if x is a square there.
std::optional<TowerElem> sqrt_in_field(const TowerElem& x);

/// Nonnegative square root of x >= 0, adjoining a new level when x is not a square.
TowerElem adjoin_sqrt(const TowerElem& x);

/// Nonnegative square root of x inside `field`, which must extend x's tower.
std::optional<TowerElem> sqrt_in(const TowerPtr& field, const TowerElem& x);
/// Like adjoin_sqrt, but the new level (if any) is built on top of `field`.
TowerElem adjoin_sqrt_over(const TowerPtr& field, const TowerElem& x);

/// A compositum of two towers together with images of each side's adjoined roots.
struct TowerJoin {
  TowerPtr tower;
  std::vector<TowerElem> left_roots;
  std::vector<TowerElem> right_roots;
};

TowerJoin join_towers(const TowerPtr& left, const TowerPtr& right);
/// Rewrites x (an element of the tower whose root images are given) in the joined field.
TowerElem embed(const TowerElem& x, std::span<const TowerElem> root_images);
/// Equality of elements from unrelated towers, via a joined tower when needed.
bool equal_across(const TowerElem& x, const TowerElem& y);

}  // namespace octic
