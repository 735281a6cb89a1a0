#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "octic/curves.hpp"
#include "octic/surface.hpp"

namespace octic {

/// A quartic-level point that induces nodes on the octic.
struct SpecialPoint {
  enum class Kind { node, contact };
  Kind kind = Kind::node;
  PlaneId plane = PlaneId::E0;
  PlanePoint coords;            // (X : Z : W) or (Y : Z : W), normalized
  std::optional<Axis> axis;     // set for contacts
  std::string label;
};

/// One representative lift of a special point to the surface.
struct NodeCandidate {
  SpecialPoint source;
  int chart = kW;  // kW or kZ, the coordinate set to 1
  Point point;     // (x, y, z, w), all coordinates in one tower of depth <= 2
};

/// Lifts a special point by taking square roots of coordinate ratios (chart
/// w = 1 if W != 0, else z = 1). Throws MathError when a radicand is negative
/// or the point is the vertex W = Z = 0.
NodeCandidate lift(const SpecialPoint& p);

/// F with its gradient and Hessian, computed once.
struct SurfaceData {
  Poly F;
  std::array<Poly, 4> grad;
  std::array<std::array<Poly, 4>, 4> hess;
  explicit SurfaceData(Poly f);
};

std::array<TowerElem, 4> verify_singular(const SurfaceData& s, const Point& p);

struct HessianResult {
  TowerElem det3;
  bool rank3 = false;
  /// The 4x4 Hessian annihilates the point.
  bool kernel_ok = false;
  int chart = kW;
};

/// Determinant of the Hessian of F dehomogenized at w = 1 (z = 1 if w = 0)
/// with respect to the remaining three coordinates. Throws MathError if the
/// point is not singular, or if `field` is given and the determinant does not
/// lie in it (the field of the quartic-level point, below the lift's roots).
HessianResult hessian_certificate(const SurfaceData& s, const Point& p,
                                  const std::optional<TowerPtr>& field = std::nullopt);

/// Determinants in the published Hessian table, by label.
std::optional<QSqrt2> published_det3(const std::string& label);

struct NodeCertificate {
  NodeCandidate candidate;
  std::array<TowerElem, 4> partials;
  HessianResult hessian;
  int orbit_size = 0;
  int expected_orbit_size = 0;
  /// Every point of the orbit was checked to be singular with nonzero det3.
  bool orbit_certified = false;
  /// The node lies on two of the eight planes and on {q = 0}.
  bool base = false;
  std::vector<Point> orbit;
  std::optional<QSqrt2> published;
  std::optional<QSqrt2> ratio;  // det3 / published value
  std::vector<std::string> diagnostics;
};

struct PlaneReport {
  PlaneId plane = PlaneId::E0;
  Poly quartic{3};
  std::vector<SpecialPoint> points;
  std::vector<NodeCandidate> lifts;
  std::vector<PlanePoint> octic_points;  // every sign choice of every lift, in plane coordinates
  SingularSetCheck octic_check;
  int octic_singular_count = 0;
  std::vector<std::string> diagnostics;
  bool ok() const { return diagnostics.empty() && octic_check.ok; }
};

/// Quartic-level analysis of one plane: singular and contact points, labels,
/// lifts. Degeneracies (non-real or non-general points) go to diagnostics.
PlaneReport analyze_plane(const Poly& F, PlaneId plane);

/// Singular points of the octic curve on the plane, by elimination on the
/// octic itself, compared with the lifted known points.
void check_plane_exhaustive(const Poly& F, PlaneReport& report);

struct PipelineResult {
  OcticParams params;
  std::vector<PlaneReport> planes;
  std::vector<NodeCertificate> nodes;
  int base_count = 0;
  int additional_count = 0;
  int total = 0;
  bool orbits_distinct = false;
  bool nodes_certified = false;
  std::vector<std::string> diagnostics;
  bool ok() const;
};

/// Certifies every lifted node and its orbit under D8 x Z2. `jobs` > 1 runs
/// nodes in parallel; the result does not depend on it.
std::vector<NodeCertificate> certify_nodes(const SurfaceData& s, const std::vector<NodeCandidate>& lifts,
                                           const Poly& q, int jobs = 1);

PipelineResult run_pipeline(const OcticParams& params, int jobs = 1);

struct LineCheck {
  bool smooth = false;
  bool vertex_on_surface = false;
  bool vertex_singular = false;
  UPoly<QSqrt2> common;  // gcd of F and its partials on L in the chart y = 1
};

/// Smoothness of F along the line L = {z = w = 0}.
LineCheck line_L_check(const Poly& F);

struct BaseCrosscheck {
  bool ok = false;
  int incidences = 0;
  int lines_hit = 0;
  std::vector<std::string> diagnostics;
};

/// Every base node lies on exactly two of the eight planes and on {q = 0};
/// each of the 28 lines carries 4 of them.
BaseCrosscheck base_nodes_crosscheck(const OcticParams& params, const std::vector<NodeCertificate>& nodes);

struct FamilySample {
  std::uint64_t seed = 0;
  OcticParams params;
  int attempts = 0;
  std::vector<std::string> rejections;
  int singular_e0 = 0;
  int singular_e1 = 0;
  int nodes = 0;
  int orbits16 = 0;
  int orbits8 = 0;
  bool ok = false;
  std::vector<std::string> diagnostics;
};

/// Degeneracy that makes a parameter set unusable for the family check, if any.
std::optional<std::string> sample_rejection_reason(const OcticParams& params);

/// Draws rational a, b, d, g, i (c = f = h = 0, e = -1) until a sample passes
/// the quartic-level checks, then runs the full pipeline.
FamilySample family_sample_check(std::uint64_t seed, int jobs = 1);

struct FamilyFormulaSample {
  Rat a1, d1, i1;
  QSqrt2 b, g;
  OcticParams params;
  std::array<TowerElem, 2> s_det;
  std::array<QSqrt2, 2> s_predicted{};
  bool s_match = false;
  std::array<TowerElem, 2> t_ratio;
  std::array<TowerElem, 2> u12_ratio;
  std::array<TowerElem, 2> u34_ratio;
};

struct FamilyFormulaReport {
  std::vector<FamilyFormulaSample> samples;
  bool s_exact = false;
  bool t_constant = false;
  bool u12_constant = false;
  bool u34_constant = false;
  std::optional<TowerElem> t_constant_value;
  std::optional<TowerElem> u12_constant_value;
  std::optional<TowerElem> u34_constant_value;
  std::vector<std::string> diagnostics;
  bool ok() const { return s_exact && t_constant && u12_constant && u34_constant; }
};

/// 8 a1^2 (4b + 2g + sign a1), the s-pair determinant.
QSqrt2 s_pair_prediction(const Rat& a1, const QSqrt2& b, const QSqrt2& g, int sign);

/// Samples with rational auxiliaries a1, d1, i1 and compares the determinants
/// with the family formulas: exactly for the s-pair, up to a constant shared
/// by all samples for the t- and u-pairs. The t-pair determinants are divided
/// by X^9, X the quartic coordinate of the contact.
FamilyFormulaReport family_formula_check(const std::vector<std::uint64_t>& seeds);

struct CheckFlag {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline constexpr const char* kCertificateSchema = "octic168-cert/1";

struct SurfaceCertificate {
  std::string schema = kCertificateSchema;
  OcticParams params;
  Poly F{4};
  std::vector<NodeCertificate> orbits;
  int base_count = 0;
  int additional_count = 0;
  int total = 0;
  std::vector<int> octic_singular_counts;
  std::optional<Poly> conic;
  std::optional<QSqrt2> conic_det;
  std::optional<IrreducibilityVerdict> irreducibility;
  std::vector<CheckFlag> checks;
  /// Published Hessian determinants reproduced exactly, and whether the ratio
  /// computed / published is the same for every point of a plane.
  int hessian_matches = 0;
  bool hessian_consistent_e0 = false;
  bool hessian_consistent_e1 = false;
  std::string off_plane_note;
  std::vector<std::string> documented_only;
  std::vector<std::string> diagnostics;
  bool pass = false;

  const CheckFlag* check(const std::string& name) const;
};

/// Runs every check for a claimed 168-node member and aggregates the result.
/// Never throws on mathematical failure: errors become failed flags.
SurfaceCertificate build_certificate(const OcticParams& params, int jobs = 1);

}  // namespace octic
