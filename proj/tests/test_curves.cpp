#include <random>

#include "doctest.h"
#include "octic/curves.hpp"
#include "octic/elimination.hpp"

using namespace octic;

namespace {

const QSqrt2 kSqrt2 = QSqrt2::sqrt2();

QSqrt2 q(const Rat& a, const Rat& b) { return QSqrt2(a, b); }
Poly v3(int v) { return Poly::variable(3, v); }
Poly c3(const QSqrt2& c) { return Poly::constant(3, c); }
Poly c3(long c) { return Poly::constant(3, QSqrt2(c)); }

PlanePoint pp(const QSqrt2& a, const QSqrt2& b, const QSqrt2& c) { return {TowerElem(a), TowerElem(b), TowerElem(c)}; }

bool same_set(const std::vector<PlanePoint>& a, const std::vector<PlanePoint>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    bool found = false;
    for (const auto& r : b) found = found || plane_points_equal(p, r);
    if (!found) return false;
  }
  return true;
}

Poly quartic(PlaneId plane) { return segre_reduce(restrict(build_F(endrass_params()), plane)).poly; }

const QSqrt2 kS3 = q(-2, 2);       // 2 sqrt2 - 2
const QSqrt2 kU12 = q(3, -2);      // 3 - 2 sqrt2

}  // namespace

TEST_CASE("restriction of P to the two planes") {
  Poly P = build_P();
  const Poly x = v3(0), w = v3(2);
  CHECK(restrict(P, PlaneId::E0).poly ==
        c3(q(Rat(-1, 4), 0)) * w * w * (x * x - w * w) * (x * x - c3(2) * w * w).pow(2));

  auto d0 = divisor_decompose(restrict(P, PlaneId::E0).poly, plane_lines(PlaneId::E0), plane_line_names(PlaneId::E0));
  std::vector<int> m0;
  for (const auto& c : d0.components) m0.push_back(c.second);
  CHECK(m0 == std::vector<int>{1, 1, 2, 2, 2});
  CHECK(d0.reassemble() == restrict(P, PlaneId::E0).poly);
  CHECK(d0.residual.total_degree() == 0);

  Poly r1 = restrict(P, PlaneId::E1).poly;
  auto d1 = divisor_decompose(r1, plane_lines(PlaneId::E1), plane_line_names(PlaneId::E1));
  std::vector<int> m1;
  for (const auto& c : d1.components) m1.push_back(c.second);
  CHECK(m1 == std::vector<int>{2, 2, 2, 2});
  CHECK(d1.reassemble() == r1);
  const QSqrt2 t2 = (kSqrt2 - QSqrt2(1)) * (kSqrt2 - QSqrt2(1));
  Poly base = (x * x - w * w) * (x * x - c3(t2) * w * w);
  CHECK(r1 == (base * base).scale(d1.scalar));

  // An invariant octic restricted to E0 is even in x.
  Poly c0 = restrict(build_F(endrass_params()), PlaneId::E0).poly;
  CHECK(c0.substitute(0, -x) == c0);
}

TEST_CASE("divisor decomposition reports a missing factor") {
  const Poly x = v3(0), w = v3(2);
  auto d = divisor_decompose(x * x - w * w, {x - w});
  CHECK(d.components[0].second == 1);
  CHECK_THROWS_AS(divisor_decompose(x * x - w * w, {x - c3(2) * w}, {"x - 2w"}), MathError);
}

TEST_CASE("Segre reduction") {
  const Poly x = v3(0), w = v3(2);
  PlaneCurve c{(x * x - w * w).pow(2), PlaneId::E0};
  CHECK(segre_reduce(c).poly == (x - w).pow(2));
  CHECK_THROWS_AS(segre_reduce(PlaneCurve{x * w, PlaneId::E0}), MathError);
  for (PlaneId plane : {PlaneId::E0, PlaneId::E1}) {
    PlaneCurve r = restrict(build_F(endrass_params()), plane);
    QuarticCurve g = segre_reduce(r);
    CHECK(g.poly.homogeneous_degree() == 4);
    CHECK(segre_lift(g.poly) == r.poly);
  }
  OcticParams odd = endrass_params();
  odd.f = QSqrt2(1);
  CHECK_THROWS_AS(segre_reduce(restrict(build_F(odd), PlaneId::E0)), MathError);
}

TEST_CASE("singular points of a nodal cubic") {
  const Poly X = v3(0), Z = v3(1), W = v3(2);
  auto s = singular_points(X * X * W - Z * Z * (Z + W));
  CHECK(s.complete());
  REQUIRE(s.points.size() == 1);
  CHECK(plane_points_equal(s.points[0], pp(QSqrt2(0), QSqrt2(0), QSqrt2(1))));
  CHECK_THROWS_AS(singular_points((X - W).pow(2) * (X * X + Z * Z - W * W)), MathError);
}

TEST_CASE("singular points of products of lines and conics are their pairwise intersections") {
  const Poly X = v3(0), Z = v3(1), W = v3(2);
  // Two ellipses meeting at (+-1, +-1), and a line meeting both in real points.
  Poly a = X * X + c3(2) * Z * Z - c3(3) * W * W;
  Poly b = c3(2) * X * X + Z * Z - c3(3) * W * W;
  Poly l = X - c3(kSqrt2) * Z;
  auto s = singular_points(a * b * l);
  CHECK(s.complete());
  // Oracle: pairwise intersections of the factors, solved by hand.
  // a = b = 0: X^2 = Z^2 = 1. a = l = 0: Z^2 = 3/4. b = l = 0: Z^2 = 3/5.
  std::vector<PlanePoint> expected;
  for (int sx : {1, -1})
    for (int sz : {1, -1}) expected.push_back(pp(QSqrt2(sx), QSqrt2(sz), QSqrt2(1)));
  for (Rat r2 : {Rat(3, 4), Rat(3, 5)}) {
    TowerElem r = adjoin_sqrt(TowerElem(r2));
    for (int sg : {1, -1}) {
      TowerElem z = TowerElem(sg) * r;
      expected.push_back({TowerElem(kSqrt2) * z, z, TowerElem(1)});
    }
  }
  CHECK(same_set(s.points, expected));
  auto check = verify_singular_set(a * b * l, expected);
  CHECK(check.ok);
  CHECK(check.found == 8);
  expected.pop_back();
  CHECK_FALSE(verify_singular_set(a * b * l, expected).ok);
}

TEST_CASE("singular points of the first quartic") {
  auto s = singular_points(quartic(PlaneId::E0));
  CHECK(s.complete());
  std::vector<PlanePoint> expected{pp(QSqrt2(2), q(Rat(1, 4), 0), QSqrt2(1)),
                                   pp(QSqrt2(2), q(Rat(9, 4), 0), QSqrt2(1)),
                                   pp(kS3, q(Rat(1, 4), 0), QSqrt2(1))};
  CHECK(same_set(s.points, expected));
  // The additional node in the form (8(sqrt2 - 1) : 1 : 4).
  CHECK(plane_points_equal(expected[2], pp(q(-8, 8), QSqrt2(1), QSqrt2(4))));
}

TEST_CASE("singular points and components of the second quartic") {
  Poly G = quartic(PlaneId::E1);
  auto s = singular_points(G);
  CHECK(s.complete());
  std::vector<PlanePoint> expected{pp(kU12, q(Rat(9, 4), -1), QSqrt2(1)), pp(kU12, q(Rat(1, 4), 0), QSqrt2(1)),
                                   pp(QSqrt2(1), q(Rat(17, 4), 3), QSqrt2(1)), pp(QSqrt2(1), q(Rat(9, 4), 0), QSqrt2(1)),
                                   pp(q(Rat(3, 2), -1), q(Rat(3, 4), Rat(-1, 2)), QSqrt2(1))};
  CHECK(same_set(s.points, expected));
  CHECK(plane_points_equal(expected[4], pp(q(6, -4), kU12, QSqrt2(4))));

  auto split = split_components(G, s.points);
  REQUIRE(split.factors.size() == 3);
  CHECK(split.reassemble() == G);
  CHECK(split.factors[0].total_degree() == 1);
  CHECK(split.factors[1].total_degree() == 1);
  const Poly& K = split.factors[2];
  CHECK(K.total_degree() == 2);
  QSqrt2 det = conic_determinant(K);
  CHECK_FALSE(det.is_zero());
  CHECK(det == q(-577, 408));

  auto w0 = contact_points(K, Axis::W);
  REQUIRE(w0.size() == 1);
  CHECK(plane_points_equal(w0[0].point, pp(QSqrt2(1), q(3, 2), QSqrt2(0))));
  CHECK(w0[0].order == 2);
  auto z0 = contact_points(K, Axis::Z);
  REQUIRE(z0.size() == 1);
  CHECK(plane_points_equal(z0[0].point, pp(QSqrt2(1), QSqrt2(0), QSqrt2(4))));
}

TEST_CASE("contact points of the first quartic") {
  Poly G = quartic(PlaneId::E0);
  auto w0 = contact_points(G, Axis::W);
  std::vector<PlanePoint> pts;
  for (const auto& c : w0) {
    CHECK(c.order == 2);
    CHECK(c.general_position);
    pts.push_back(c.point);
  }
  CHECK(same_set(pts, {pp(QSqrt2(2), QSqrt2(1), QSqrt2(0)), pp(kS3, QSqrt2(1), QSqrt2(0))}));
  auto z0 = contact_points(G, Axis::Z);
  REQUIRE(z0.size() == 1);
  CHECK(plane_points_equal(z0[0].point, pp(QSqrt2(1), QSqrt2(0), QSqrt2(2))));

  const Poly X = v3(0), Z = v3(1), W = v3(2);
  auto made = contact_points((X - W).pow(2) * (X * X + Z * Z + c3(3) * W * W), Axis::Z);
  REQUIRE(made.size() == 1);
  CHECK(plane_points_equal(made[0].point, pp(QSqrt2(1), QSqrt2(0), QSqrt2(1))));
  CHECK_THROWS_AS(contact_points(Z * (X * X * X + W * W * W), Axis::Z), MathError);
}

TEST_CASE("component splitting") {
  const Poly X = v3(0), Z = v3(1), W = v3(2);
  Poly G = (X - W) * (X + W) * (X * X + Z * Z - c3(2) * W * W);
  auto s = singular_points(G);
  CHECK(s.points.size() == 5);
  auto split = split_components(G, s.points);
  CHECK(split.factors.size() == 3);
  CHECK(split.reassemble() == G);

  // Two conics meeting in four real points.
  Poly a = X * X + c3(4) * Z * Z - c3(4) * W * W, b = c3(4) * X * X + Z * Z - c3(4) * W * W;
  auto s2 = singular_points(a * b);
  CHECK(s2.points.size() == 4);
  auto split2 = split_components(a * b, s2.points);
  CHECK(split2.factors.size() == 2);
  CHECK(split2.reassemble() == a * b);

  auto irr = split_components(quartic(PlaneId::E0), singular_points(quartic(PlaneId::E0)).points);
  CHECK(irr.factors.size() == 1);
}

TEST_CASE("conic determinant") {
  const Poly X = v3(0), Z = v3(1), W = v3(2);
  CHECK(conic_determinant(X * X + Z * Z - W * W) == QSqrt2(-1));
  CHECK(conic_determinant(X * Z).is_zero());
  CHECK_THROWS_AS(conic_determinant(X), MathError);
}

TEST_CASE("irreducibility by projection from a node") {
  Poly G = quartic(PlaneId::E0);
  auto v = irreducibility_check(G, pp(QSqrt2(2), q(Rat(1, 4), 0), QSqrt2(1)));
  CHECK(v.node_ok);
  CHECK_FALSE(v.linear_factor_through_node);
  CHECK_FALSE(v.branch_polynomial_square);
  CHECK(v.irreducible);
  CHECK(v.oracle_no_factor);
  CHECK(v.oracle_prime == 7);

  // Two circles through the node (1, 1).
  const Poly X = v3(0), Z = v3(1), W = v3(2);
  Poly red = (X * X + Z * Z - c3(2) * W * W) * ((X - c3(2) * W).pow(2) + Z * Z - c3(2) * W * W);
  auto r = irreducibility_check(red, pp(QSqrt2(1), QSqrt2(1), QSqrt2(1)));
  CHECK(r.branch_polynomial_square);
  CHECK_FALSE(r.irreducible);
  CHECK_FALSE(r.oracle_no_factor);
  CHECK(modular_irreducible(red, 7) == false);

  // A line through the node times a nodal cubic.
  Poly line_cubic = (X - Z) * (Z * W * W - X * X * X);
  CHECK(irreducibility_check(line_cubic, pp(QSqrt2(0), QSqrt2(0), QSqrt2(1))).linear_factor_through_node);

  CHECK_THROWS_AS(irreducibility_check(G, pp(QSqrt2(0), QSqrt2(0), QSqrt2(1))), MathError);
  CHECK_THROWS_AS(irreducibility_check(X * X * W - Z * Z * (Z + W), pp(QSqrt2(0), QSqrt2(0), QSqrt2(1))),
                  MathError);
}
