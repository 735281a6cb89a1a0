#pragma once

#include <vector>

#include "octic/rational.hpp"
#include "octic/upoly.hpp"

namespace octic {

/// One real root of a rational polynomial, isolated by a rational interval.
///
/// `factor` is the squarefree factor of the input that has this root; it has
/// exactly one root in the open interval (lo, hi), or lo == hi and the root is
/// that rational number.
struct RealRoot {
  Rat lo;
  Rat hi;
  int multiplicity = 1;
  UPoly<Rat> factor;

  bool is_exact() const { return lo == hi; }
  Rat width() const { return hi - lo; }
  /// Bisects until width() <= w. Result intervals nest.
  void refine(const Rat& w);
  /// Midpoint as a double (for diagnostics only).
  double approx() const;
  bool contains_value(const Rat& v) const { return lo <= v && v <= hi; }
};

/// All real roots of p != 0, sorted, in pairwise disjoint intervals, with
/// multiplicities from the squarefree decomposition. Descartes' rule of signs
/// on bisected intervals (Vincent-Collins-Akritas).
std::vector<RealRoot> isolate_real_roots(const UPoly<Rat>& p);

/// Number of sign variations of the coefficient sequence (zeros skipped).
int sign_variations(const std::vector<Rat>& coeffs);

/// Descartes bound for the number of roots of p in the open interval (a, b).
int descartes_bound(const UPoly<Rat>& p, const Rat& a, const Rat& b);

/// The rational with smallest denominator (then smallest magnitude) in [lo, hi].
Rat simplest_rational(const Rat& lo, const Rat& hi);

}  // namespace octic
