#pragma once

#include <array>
#include <string>
#include <vector>

#include "octic/mpoly.hpp"
#include "octic/qsqrt2.hpp"
#include "octic/tower.hpp"

namespace octic {

/// Polynomials in x, y, z, w (variables 0..3) with coefficients in Q(sqrt 2).
using Poly = MPoly<QSqrt2>;
enum Var : int { kX = 0, kY = 1, kZ = 2, kW = 3 };

/// Coefficients of the invariant quartic
///   q = a s^2 + s (b z^2 + c z w + d w^2) + e z^4 + f z^3 w + g z^2 w^2 + h z w^3 + i w^4,
/// with s = x^2 + y^2.
struct OcticParams {
  QSqrt2 a, b, c, d, e, f, g, h, i;

  friend bool operator==(const OcticParams&, const OcticParams&) = default;
  /// True when c = f = h = 0 and e = -1 (the normalized symmetric family).
  bool normalized() const;
};

/// Squares of the auxiliary quantities that parametrize the normalized family.
struct AuxParams {
  QSqrt2 a1_sq, d1_sq, i1_sq;
  friend bool operator==(const AuxParams&, const AuxParams&) = default;
};

/// The member of the family with 168 nodes.
OcticParams endrass_params();

/// Parameters (a, d, i) from the auxiliary squares and (b, g), evaluated in
/// dependency order a, then d, then i; c = f = h = 0 and e = -1.
OcticParams substitution_chain(const QSqrt2& a1_sq, const QSqrt2& d1_sq, const QSqrt2& i1_sq,
                               const QSqrt2& b, const QSqrt2& g);

/// Inverse of substitution_chain; requires params.normalized().
AuxParams solve_aux(const OcticParams& params);

/// cos(j pi/4) x + sin(j pi/4) y - w.
Poly plane_form(int j);
/// Product of the eight plane forms.
Poly build_P();
/// 1/4 (x^2 - w^2)(y^2 - w^2)((x + y)^2 - 2w^2)((x - y)^2 - 2w^2).
Poly build_P_closed_form();
Poly build_q(const OcticParams& params);
Poly build_Q(const OcticParams& params);
/// F = P - q^2, homogeneous of degree 8.
Poly build_F(const OcticParams& params);

/// Linear change of coordinates v -> M v on P^3, with its label phi^k tau^r zeta^t,
/// where phi rotates the (x, y)-plane, tau is y -> -y and zeta is z -> -z.
struct GroupElement {
  std::array<std::array<QSqrt2, 4>, 4> m{};
  int rotation = 0;
  bool reflection = false;
  bool z_flip = false;

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.m == b.m; }
  std::string label() const;
};

GroupElement identity_element();
GroupElement operator*(const GroupElement& a, const GroupElement& b);

/// The dihedral group D_n (order 2n) acting on (x, y), optionally times the
/// z-sign involution. Only n in {1, 2, 4, 8} have matrix entries in Q(sqrt 2);
/// other n raise MathError.
std::vector<GroupElement> dihedral_group(int n, bool include_z2);

/// (g . p)(v) = p(M v).
Poly act(const GroupElement& g, const Poly& p);
bool is_invariant(const Poly& p, const std::vector<GroupElement>& group);

/// Reflection plane E_j of D_n: {sin(j pi/n) x - cos(j pi/n) y = 0}. The
/// stored form is that linear form scaled by a positive factor so that its
/// coefficients lie in Q(sqrt 2).
struct ReflectionPlane {
  int index = 0;
  int n = 8;
  QSqrt2 x_coeff;
  QSqrt2 y_coeff;
  Poly form() const;
};

std::vector<ReflectionPlane> reflection_planes(int n);
/// The reflection of D_n fixing E_j.
GroupElement plane_reflection(int j, int n);

using Point = std::vector<TowerElem>;

Point apply(const GroupElement& g, const Point& p);
/// Scales p so that its first nonzero coordinate is 1.
Point normalize_point(const Point& p);
/// Equality in projective space (scalar multiples), across towers if needed.
bool projectively_equal(const Point& a, const Point& b);
/// Distinct images of p under the group.
std::vector<Point> orbit_of_point(const Point& p, const std::vector<GroupElement>& group);
/// Length of the D_n-orbit of a point (x0 : 0 : z0 : w0) on E_0:
/// 1 if x0 = 0, n/2 if n is even and z0 = w0 = 0, n otherwise.
int orbit_length_formula(const Point& p, int n);

}  // namespace octic
