#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "octic/surface.hpp"
#include "octic/upoly.hpp"

namespace octic {

/// The two reflection planes on which all computations happen:
/// E0 = {y = 0} with coordinates (x : z : w) and E1 = {x = (1 + sqrt2) y} with (y : z : w).
enum class PlaneId { E0, E1 };

std::string plane_name(PlaneId p);

/// Homogeneous polynomial in three plane coordinates (variables 0, 1, 2).
struct PlaneCurve {
  Poly poly{3};
  PlaneId plane = PlaneId::E0;
};

/// A point of P^2 with coordinates in a tower, scaled so that the last nonzero
/// of (w, then z, then the first coordinate) equals 1.
using PlanePoint = std::array<TowerElem, 3>;

PlanePoint normalize_plane_point(const PlanePoint& p);
bool plane_points_equal(const PlanePoint& a, const PlanePoint& b);
std::string to_string(const PlanePoint& p);

/// Substitutes the plane equation: y = 0 on E0, x = (1 + sqrt2) y on E1.
PlaneCurve restrict(const Poly& F, PlaneId plane);

/// p = scalar * residual * prod component^multiplicity, exactly.
struct DivisorDecomposition {
  std::vector<std::pair<Poly, int>> components;
  Poly residual{3};
  QSqrt2 scalar;
  Poly reassemble() const;
};

/// Divides out each expected linear form as often as possible. Throws
/// MathError naming the form if one of them does not divide p at all.
DivisorDecomposition divisor_decompose(const Poly& p, const std::vector<Poly>& expected,
                                       const std::vector<std::string>& names = {});

/// The named lines of the plane: x = +-w, x = +-sqrt2 w, w = 0 on E0 and
/// y = +-w, y = +-(sqrt2 - 1) w on E1.
std::vector<Poly> plane_lines(PlaneId plane);
std::vector<std::string> plane_line_names(PlaneId plane);

/// Plane quartic G in (X : Z : W) with G(x^2, z^2, w^2) equal to an even octic curve.
struct QuarticCurve {
  Poly poly{3};
  PlaneId plane = PlaneId::E0;
};

/// Halves every exponent; throws MathError unless every exponent is even.
QuarticCurve segre_reduce(const PlaneCurve& c);
/// Substitutes squares of the coordinates (inverse of segre_reduce).
Poly segre_lift(const Poly& quartic);

/// Complete list of singular points of a plane curve, or diagnostics for the
/// ones that could not be expressed in the supported towers.
struct SingularSearch {
  std::vector<PlanePoint> points;
  std::vector<std::string> unmatched;
  bool complete() const { return unmatched.empty(); }
};

/// Eliminates one variable at a time in the chart w = 1 (with a shear if an
/// eliminant degenerates), identifies the roots exactly, proves that residual
/// factors carry no singular point, and sweeps the line w = 0 separately.
SingularSearch singular_points(const Poly& curve);

/// Checks that the singular points of `curve` are exactly `known` (no Segre
/// shortcut; roots of the eliminant are matched to the known coordinates).
struct SingularSetCheck {
  bool ok = false;
  int found = 0;
  std::vector<std::string> diagnostics;
};
SingularSetCheck verify_singular_set(const Poly& curve, const std::vector<PlanePoint>& known);

enum class Axis { Z = 1, W = 2 };

/// Point where the curve meets a coordinate axis with multiplicity `order`.
struct AxisContact {
  PlanePoint point;
  int order = 2;
  bool general_position = true;
};

/// Roots of the restriction of G to the axis with multiplicity >= 2. Those of
/// multiplicity exactly 2 away from the coordinate vertices are contacts.
std::vector<AxisContact> contact_points(const Poly& G, Axis axis);

/// Factors of G over Q(sqrt 2) with scalar * prod factors = G.
struct ComponentSplit {
  std::vector<Poly> factors;
  QSqrt2 scalar;
  /// True if the residual quartic splits into two conics only over a quadratic extension.
  bool conic_pair_over_extension = false;
  Poly reassemble() const;
};

ComponentSplit split_components(const Poly& G, const std::vector<PlanePoint>& singular);

/// Determinant of the symmetric matrix of a conic (off-diagonal entries are
/// half the mixed coefficients).
QSqrt2 conic_determinant(const Poly& conic);

struct IrreducibilityVerdict {
  bool node_ok = false;
  bool linear_factor_through_node = false;
  /// Branch-point polynomial of the projection from the node.
  UPoly<QSqrt2> branch_polynomial;
  bool branch_polynomial_square = false;
  bool irreducible = false;
  /// Modular search for line and conic factors over F_p (sqrt2 -> a root of 2 mod p).
  int oracle_prime = 0;
  bool oracle_no_factor = false;
  std::string oracle_note;
};

/// Projection from a node of a quartic: lines through the node meet the curve in
/// two further points, and the curve is irreducible iff there is no line
/// component through the node and the discriminant of that residual pair is not
/// a constant times a square. Throws MathError if `node` is not a node or the
/// curve is not a quartic.
IrreducibilityVerdict irreducibility_check(const Poly& G, const PlanePoint& node);

/// Searches for line and conic factors of a plane quartic modulo p. Returns
/// true if none exists (so G is irreducible over Q(sqrt 2)); nullopt if p is
/// unusable (bad reduction).
std::optional<bool> modular_irreducible(const Poly& G, long p);

}  // namespace octic
