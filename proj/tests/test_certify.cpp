#include <algorithm>
#include <string>

#include "doctest.h"
#include "octic/certify.hpp"
#include "octic/linalg.hpp"
#include "octic/serialize.hpp"

using namespace octic;

namespace {

const QSqrt2 kSqrt2 = QSqrt2::sqrt2();

QSqrt2 q(const Rat& a, const Rat& b) { return {a, b}; }

SpecialPoint special(PlaneId plane, SpecialPoint::Kind kind, QSqrt2 a, QSqrt2 z, QSqrt2 w, std::string label) {
  return {kind, plane, {TowerElem(a), TowerElem(z), TowerElem(w)}, std::nullopt, std::move(label)};
}

const PipelineResult& endrass_run() {
  static const PipelineResult r = run_pipeline(endrass_params(), 4);
  return r;
}

const NodeCertificate& node(const std::string& label) {
  for (const auto& n : endrass_run().nodes)
    if (n.candidate.source.label == label) return n;
  throw std::runtime_error("no node " + label);
}

// Hessian determinant computed along a separate path: dehomogenize first, then
// differentiate the affine polynomial.
TowerElem affine_hessian_det(const Poly& F, const Point& p, int chart) {
  Poly f = F.substitute(chart, Poly::constant(4, QSqrt2(1)));
  std::vector<int> vars;
  for (int i = 0; i < 4; ++i)
    if (i != chart) vars.push_back(i);
  const TowerElem inv = p[chart].inverse();
  Point rep;
  for (const auto& c : p) rep.push_back(c * inv);
  Matrix<TowerElem> m(3, std::vector<TowerElem>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = f.partial(vars[i]).partial(vars[j]).evaluate(rep);
  return determinant(m);
}

}  // namespace

TEST_CASE("lifting special points") {
  SpecialPoint t3 = special(PlaneId::E0, SpecialPoint::Kind::contact, QSqrt2(1), QSqrt2(0), QSqrt2(2), "t3");
  NodeCandidate c = lift(t3);
  CHECK(c.chart == kW);
  CHECK(c.point[kX] == TowerElem(q(0, Rat(1, 2))));
  CHECK(c.point[kY].is_zero());
  CHECK(c.point[kZ].is_zero());
  CHECK(c.point[kW] == TowerElem(1));
  CHECK(c.point[kX].in_base());

  SpecialPoint v2 = special(PlaneId::E1, SpecialPoint::Kind::contact, QSqrt2(1), QSqrt2(0), QSqrt2(4), "v2");
  NodeCandidate d = lift(v2);
  CHECK(d.point[kX] == TowerElem(q(Rat(1, 2), Rat(1, 2))));
  CHECK(d.point[kY] == TowerElem(Rat(1, 2)));
  CHECK((d.point[kX] - TowerElem(q(1, 1)) * d.point[kY]).is_zero());

  SpecialPoint s3 = special(PlaneId::E0, SpecialPoint::Kind::node, q(-8, 8), QSqrt2(1), QSqrt2(4), "s3");
  NodeCandidate e = lift(s3);
  CHECK(e.point[kX].depth() == 1);
  CHECK(e.point[kX] * e.point[kX] == TowerElem(q(-2, 2)));
  CHECK(e.point[kZ] == TowerElem(Rat(1, 2)));

  // Contact on the line W = 0 lifts in the chart z = 1.
  SpecialPoint v1 = special(PlaneId::E1, SpecialPoint::Kind::contact, QSqrt2(1), q(3, 2), QSqrt2(0), "v1");
  NodeCandidate f = lift(v1);
  CHECK(f.chart == kZ);
  CHECK(f.point[kZ] == TowerElem(1));
  CHECK(f.point[kY] * f.point[kY] * TowerElem(q(3, 2)) == TowerElem(1));

  CHECK_THROWS_AS(lift(special(PlaneId::E0, SpecialPoint::Kind::node, QSqrt2(-1), QSqrt2(1), QSqrt2(1), "neg")),
                  MathError);
  CHECK_THROWS_AS(lift(special(PlaneId::E0, SpecialPoint::Kind::node, QSqrt2(1), QSqrt2(0), QSqrt2(0), "vertex")),
                  MathError);
}

TEST_CASE("singularity and Hessian at lifted points") {
  const SurfaceData s(build_F(endrass_params()));
  NodeCandidate t3 = lift(special(PlaneId::E0, SpecialPoint::Kind::contact, QSqrt2(1), QSqrt2(0), QSqrt2(2), "t3"));
  for (const auto& v : verify_singular(s, t3.point)) CHECK(v.is_zero());
  CHECK(s.F.evaluate(t3.point).is_zero());
  HessianResult h = hessian_certificate(s, t3.point);
  CHECK(h.det3 == TowerElem(Rat(9, 512)));
  CHECK(h.rank3);
  CHECK(h.kernel_ok);

  Point generic{TowerElem(1), TowerElem(1), TowerElem(1), TowerElem(1)};
  auto g = verify_singular(s, generic);
  CHECK_FALSE(std::all_of(g.begin(), g.end(), [](const TowerElem& x) { return x.is_zero(); }));
  CHECK_THROWS_AS(hessian_certificate(s, generic), MathError);

  // s1 = (2 : 1/4 : 1) lifts to (sqrt2, 0, 1/2, 1).
  Point s1{TowerElem(kSqrt2), TowerElem(0), TowerElem(Rat(1, 2)), TowerElem(1)};
  CHECK(hessian_certificate(s, s1).det3 == TowerElem(128));
}

TEST_CASE("Hessian determinants agree with the affine computation and descend to Q(sqrt 2)") {
  const Poly F = build_F(endrass_params());
  for (const auto& n : endrass_run().nodes) {
    CAPTURE(n.candidate.source.label);
    CHECK(n.hessian.det3.in_base());
    CHECK(n.hessian.rank3);
    CHECK(n.hessian.det3 == affine_hessian_det(F, n.candidate.point, n.hessian.chart));
  }
  CHECK(node("s1").hessian.det3 == TowerElem(128));
  CHECK(node("s2").hessian.det3 == TowerElem(1152));
  CHECK(node("t3").hessian.det3 == TowerElem(Rat(9, 512)));
  CHECK(node("v1").hessian.chart == kZ);
  // Goldens under the fixed convention that differ from the published table.
  CHECK(node("t1").hessian.det3 == TowerElem(128));
  CHECK(node("t2").hessian.det3 == TowerElem(q(-30592, 21632)));
  CHECK(node("u1").hessian.det3 == TowerElem(q(742912, -525312)));
  CHECK(node("v1").hessian.det3 == TowerElem(q(50688, -35840)));
  // u1 is the Galois conjugate of the published value.
  CHECK(node("u1").hessian.det3.base_value() == published_det3("u1")->conj());
}

TEST_CASE("orbit table at the special parameters") {
  const auto& r = endrass_run();
  CHECK(r.ok());
  std::vector<std::string> labels;
  std::vector<int> sizes;
  for (const auto& n : r.nodes) {
    labels.push_back(n.candidate.source.label);
    sizes.push_back(n.orbit_size);
    CHECK(n.orbit_certified);
    CHECK(n.orbit_size == n.expected_orbit_size);
  }
  CHECK(labels == std::vector<std::string>{"s1", "s2", "s3", "t1", "t2", "t3", "u1", "u2", "u3", "u4", "u5", "v1", "v2"});
  CHECK(sizes == std::vector<int>{16, 16, 16, 8, 8, 8, 16, 16, 16, 16, 16, 8, 8});
  CHECK(r.base_count == 112);
  CHECK(r.additional_count == 56);
  CHECK(r.total == 168);
  CHECK(r.orbits_distinct);
  for (const auto& p : node("t3").orbit) {
    CHECK(p[kZ].is_zero());
    REQUIRE_FALSE(p[kW].is_zero());
    CHECK((p[kX] * p[kX] + p[kY] * p[kY]) / (p[kW] * p[kW]) == TowerElem(Rat(1, 2)));
  }
  CHECK(r.planes[0].octic_singular_count == 18);
  CHECK(r.planes[1].octic_singular_count == 24);
  const std::vector<std::string> base{"s1", "s2", "t1", "t2", "u1", "u2", "u3", "u4"};
  for (const auto& n : r.nodes)
    CHECK(n.base == (std::find(base.begin(), base.end(), n.candidate.source.label) != base.end()));
}

TEST_CASE("published Hessian table against the fixed convention") {
  int exact = 0;
  for (const auto& n : endrass_run().nodes) {
    REQUIRE(n.ratio.has_value());
    if (*n.ratio == QSqrt2(1)) ++exact;
  }
  CHECK(exact == 9);
  CHECK(*node("t1").ratio == QSqrt2(512));
  CHECK_FALSE(published_det3("w1").has_value());
}

TEST_CASE("base nodes lie on the 28 double lines of P") {
  BaseCrosscheck bc = base_nodes_crosscheck(endrass_params(), endrass_run().nodes);
  CHECK(bc.ok);
  CHECK(bc.incidences == 112);
  CHECK(bc.lines_hit == 28);
  // The t1 orbit sits on lines H_j, H_{j+4} inside w = 0.
  for (const auto& p : node("t1").orbit) {
    CHECK(p[kW].is_zero());
    int on = 0;
    for (int j = 0; j < 8; ++j) on += plane_form(j).evaluate(p).is_zero() ? 1 : 0;
    CHECK(on == 2);
  }
}

TEST_CASE("line L") {
  const Poly F = build_F(endrass_params());
  LineCheck l = line_L_check(F);
  CHECK(l.smooth);
  CHECK_FALSE(l.vertex_on_surface);
  CHECK(l.common.degree() == 0);
  std::vector<QSqrt2> vertex{QSqrt2(1), QSqrt2(0), QSqrt2(0), QSqrt2(0)};
  CHECK(F.evaluate(vertex) * QSqrt2(256) == QSqrt2(-48, -32));

  // Singular at (1 : 1 : 0 : 0) by construction.
  const Poly x = Poly::variable(4, kX), y = Poly::variable(4, kY), z = Poly::variable(4, kZ), w = Poly::variable(4, kW);
  Poly bad = (x - y).pow(2) * (x.pow(6) + Poly::constant(4, QSqrt2(2)) * y.pow(6)) + z.pow(8) + w.pow(8);
  LineCheck lb = line_L_check(bad);
  CHECK_FALSE(lb.smooth);
  CHECK(lb.common.degree() == 1);
  // Singular exactly at the vertex (1 : 0 : 0 : 0).
  Poly vertex_bad = y.pow(2) * x.pow(6) + y.pow(8) + z.pow(8) + w.pow(8);
  LineCheck lv = line_L_check(vertex_bad);
  CHECK(lv.vertex_singular);
  CHECK_FALSE(lv.smooth);
}

TEST_CASE("generic family member") {
  FamilySample a = family_sample_check(1, 4);
  CHECK(a.ok);
  CHECK(a.nodes == 112);
  CHECK(a.singular_e0 == 12);
  CHECK(a.singular_e1 == 16);
  CHECK(a.orbits16 == 6);
  CHECK(a.orbits8 == 2);
  CHECK(a.params.normalized());
  CHECK(a.rejections.size() == static_cast<std::size_t>(a.attempts - 1));
  FamilySample b = family_sample_check(1, 1);
  CHECK(b.params == a.params);
  CHECK(b.attempts == a.attempts);
}

TEST_CASE("degenerate samples are rejected") {
  // With a1 = 4b + 2g one point of the s-pair moves onto the axis Z = 0.
  OcticParams p = substitution_chain(QSqrt2(36), QSqrt2(49), QSqrt2(4), QSqrt2(1), QSqrt2(1));
  auto reason = sample_rejection_reason(p);
  REQUIRE(reason.has_value());
  CHECK(reason->find("E0") != std::string::npos);
  OcticParams odd = endrass_params();
  odd.c = QSqrt2(1);
  CHECK(sample_rejection_reason(odd).has_value());
  CHECK_FALSE(sample_rejection_reason(endrass_params()).has_value());
}

TEST_CASE("family determinant formulas") {
  CHECK(s_pair_prediction(Rat(0), QSqrt2(3), QSqrt2(5), 1).is_zero());
  CHECK(s_pair_prediction(Rat(4), QSqrt2(1), QSqrt2(0), -1) == QSqrt2(0));
  CHECK(s_pair_prediction(Rat(1), QSqrt2(1), QSqrt2(0), 1) == QSqrt2(40));
  FamilyFormulaReport r = family_formula_check({1, 2});
  CHECK(r.ok());
  CHECK(r.samples.size() == 2);
  REQUIRE(r.t_constant_value.has_value());
  CHECK(*r.t_constant_value == TowerElem(Rat(-1, 512)));
  REQUIRE(r.u12_constant_value.has_value());
  CHECK(*r.u12_constant_value == TowerElem(q(14848, -10496)));
  REQUIRE(r.u34_constant_value.has_value());
  CHECK(*r.u34_constant_value == TowerElem(q(14848, 10496)));
  for (const auto& s : r.samples) CHECK(s.s_match);
}

TEST_CASE("certificate at the special parameters") {
  SurfaceCertificate c = build_certificate(endrass_params(), 4);
  CHECK(c.pass);
  CHECK(c.total == 168);
  for (const auto& f : c.checks) {
    CAPTURE(f.name);
    CAPTURE(f.detail);
    CHECK(f.pass);
  }
  for (const char* name : {"P-identity", "invariance-32", "divisor-E0", "divisor-E1", "exhaustive-E0", "exhaustive-E1",
                           "nodes-certified", "orbits-distinct", "base-nodes-on-lines", "total-168",
                           "conic-nondegenerate", "C0-irreducible", "line-L"})
    CHECK(c.check(name) != nullptr);
  REQUIRE(c.conic_det.has_value());
  CHECK(*c.conic_det == QSqrt2(-577, 408));
  CHECK(c.hessian_matches == 9);
  CHECK_FALSE(c.hessian_consistent_e0);
  CHECK_FALSE(c.hessian_consistent_e1);
  CHECK_FALSE(c.off_plane_note.empty());
}

TEST_CASE("certificates of other members fail") {
  OcticParams perturbed = endrass_params();
  perturbed.i += QSqrt2(make_rat(1, 1000));
  SurfaceCertificate c = build_certificate(perturbed, 4);
  CHECK_FALSE(c.pass);
  CHECK(c.total != 168);

  OcticParams odd = endrass_params();
  odd.c = QSqrt2(1);
  SurfaceCertificate d = build_certificate(odd, 4);
  CHECK_FALSE(d.pass);
  CHECK_FALSE(d.check("invariance-32")->pass);
  CHECK(d.check("exhaustive-E0")->detail.find("even") != std::string::npos);
}

TEST_CASE("certificates do not depend on the number of threads") {
  CHECK(to_json(build_certificate(endrass_params(), 1)) == to_json(build_certificate(endrass_params(), 3)));
}

TEST_CASE("serialization round trips") {
  Rat r = make_rat(-7, 12);
  CHECK(rat_from_json(to_json(r)) == r);
  CHECK(to_json(r) == "-7/12");
  CHECK(rat_from_json(Json("5")) == Rat(5));
  QSqrt2 x(make_rat(3, 4), Rat(-2));
  CHECK(qsqrt2_from_json(to_json(x)) == x);

  for (const auto& n : endrass_run().nodes) {
    Point p = point_from_json(to_json(n.candidate.point));
    CHECK(to_json(p) == to_json(n.candidate.point));
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(equal_across(p[i], n.candidate.point[i]));
  }
  TowerElem deep = adjoin_sqrt(TowerElem(q(-2, 2))) + adjoin_sqrt_over(adjoin_sqrt(TowerElem(q(-2, 2))).tower(), TowerElem(3));
  CHECK(deep.depth() == 2);
  TowerElem back = tower_elem_from_json(to_json(deep));
  CHECK(to_json(back) == to_json(deep));
  CHECK(same_tower(back.tower(), deep.tower()));

  const Poly F = build_F(endrass_params());
  CHECK(poly_from_json(to_json(F)) == F);
  CHECK(params_from_json(to_json(endrass_params())) == endrass_params());

  CHECK_THROWS_AS(rat_from_json(Json("1/0x")), SerializationError);
  CHECK_THROWS_AS(params_from_json(Json{{"z", "1"}}), SerializationError);
  CHECK_THROWS_AS(poly_from_json(Json{{"arity", 4}, {"terms", Json::array({Json::array({Json::array({1, 2}), "1"})})}}),
                  SerializationError);
  CHECK_THROWS_AS(tower_elem_from_json(Json{{"tower", Json::array()}, {"coeffs", Json::array({"1", "2"})}}),
                  SerializationError);
}

TEST_CASE("structured and text certificates carry the same data") {
  SurfaceCertificate c = build_certificate(endrass_params(), 4);
  Json j = to_json(c);
  CHECK(j["schema"] == "octic168-cert/1");
  CHECK(j["counts"]["total"] == 168);
  CHECK(j["orbits"].size() == 13);
  CHECK(params_from_json(j["params"]) == endrass_params());
  CHECK(poly_from_json(j["F"]) == c.F);
  Json reparsed = Json::parse(j.dump());
  CHECK(reparsed == j);
  const std::string text = certificate_to_text(c);
  const std::string flat = flatten_json(j);
  CHECK(text.find(flat) != std::string::npos);
  for (const char* label : {"s1", "t3", "u5", "v2"}) CHECK(text.find(std::string("\n") + label + " ") != std::string::npos);

  FamilySample s = family_sample_check(2, 4);
  Json js = to_json(s);
  CHECK(to_json(family_sample_from_json(js)) == js);
}
