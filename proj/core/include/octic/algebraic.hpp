#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "octic/qsqrt2.hpp"
#include "octic/tower.hpp"
#include "octic/upoly.hpp"

namespace octic {

/// Floating-point complex number at a caller-chosen GMP precision.
struct ComplexApprox {
  mpf_class re;
  mpf_class im;
};

/// All complex roots of p (degree >= 1) by the Aberth-Ehrlich iteration at
/// `precision` bits. Only used to propose candidates; every root reported by
/// identify_real_roots is verified exactly.
std::vector<ComplexApprox> complex_roots(const UPoly<QSqrt2>& p, unsigned precision = 512);

/// Galois conjugate sqrt2 -> -sqrt2 applied to every coefficient.
UPoly<QSqrt2> conjugate(const UPoly<QSqrt2>& p);

/// Exact real roots of a polynomial over Q(sqrt 2) that lie in Q(sqrt 2) or in a
/// quadratic extension of it.
struct RootIdentification {
  /// Distinct real roots, ascending.
  std::vector<TowerElem> roots;
  /// Monic product of the factors whose real roots are listed (each factor splits over R).
  UPoly<QSqrt2> identified;
  /// Monic cofactor: its roots are non-real or of degree > 2 over Q(sqrt 2).
  UPoly<QSqrt2> residual;
};

/// Finds linear and quadratic factors over Q(sqrt 2) of squarefree_part(p) by
/// pairing numeric roots of p and of its conjugate, recognizing the symmetric
/// functions as elements of Q(sqrt 2), and confirming each factor by exact division.
RootIdentification identify_real_roots(const UPoly<QSqrt2>& p);

/// Real roots (ascending, distinct) of p of degree <= 2 over a tower. When the
/// discriminant is not a square, its root is adjoined on top of `field`, so all
/// roots share a tower extending `field`. Returns nullopt for degree > 2.
std::optional<std::vector<TowerElem>> solve_low_degree(const UPoly<TowerElem>& p, const TowerPtr& field);

/// Minimal polynomial of x over Q(sqrt 2) (monic).
UPoly<QSqrt2> minimal_polynomial(const TowerElem& x);

/// Monic least common multiple of the minimal polynomials of `values`.
UPoly<QSqrt2> annihilator(const std::vector<TowerElem>& values);

UPoly<TowerElem> to_tower_poly(const UPoly<QSqrt2>& p);

}  // namespace octic
