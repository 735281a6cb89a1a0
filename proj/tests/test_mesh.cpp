#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "mesh.hpp"
#include "octic/certify.hpp"

using namespace octic;

namespace {

double area(const mesh::Mesh& m, const std::array<int, 3>& t) {
  const auto &a = m.vertices[t[0]], &b = m.vertices[t[1]], &c = m.vertices[t[2]];
  const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]}, v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  const double n[3] = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  return 0.5 * std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
}

double eval_affine(const Poly& f, const double* c) {
  double acc = 0;
  for (const auto& [e, k] : f.terms()) acc += k.to_double() * std::pow(c[0], e[kX]) * std::pow(c[1], e[kY]) * std::pow(c[2], e[kZ]);
  return acc;
}

// Tangent cone of a node at affine point c: lone eigenvalue of one sign and a
// pair of the other. Returns the largest cotangent of the cone's half-angle,
// which bounds how far grid edges can stay clear of the cone near its apex.
double cone_cotangent(const SurfaceData& s, const double* c) {
  Eigen::Matrix3d H;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) H(i, j) = eval_affine(s.hess[i][j], c);
  const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(H).eigenvalues();
  const int positive = static_cast<int>((ev.array() > 0).count());
  const double lone = positive == 1 ? ev[2] : -ev[0];
  const double pair = positive == 1 ? std::max(-ev[0], -ev[1]) : std::max(ev[1], ev[2]);
  return std::sqrt(pair / lone);
}

}  // namespace

TEST_CASE("mesh of a sphere") {
  const Poly x = Poly::variable(4, kX), y = Poly::variable(4, kY), z = Poly::variable(4, kZ), w = Poly::variable(4, kW);
  mesh::Mesh m = mesh::render_surface(x * x + y * y + z * z - w * w, {16, 2.0, 1});
  REQUIRE_FALSE(m.triangles.empty());
  for (const auto& v : m.vertices) CHECK(std::abs(std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) - 1.0) < 0.05);
  // Outward normals: the triangle normal points away from the centre.
  for (const auto& t : m.triangles) {
    const auto &a = m.vertices[t[0]], &b = m.vertices[t[1]], &c = m.vertices[t[2]];
    const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]}, v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    const double n[3] = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    CHECK(n[0] * a[0] + n[1] * a[1] + n[2] * a[2] > 0);
  }
  CHECK_THROWS(mesh::render_surface(x, {4, 1.0, 1}));
  CHECK_THROWS(mesh::render_surface(x, {8, 0.0, 1}));
}

TEST_CASE("mesh of the octic") {
  const Poly F = build_F(endrass_params());
  const mesh::RenderConfig cfg{64, 3.0, 4};
  mesh::Mesh m = mesh::render_surface(F, cfg);
  REQUIRE_FALSE(m.triangles.empty());
  const int nv = static_cast<int>(m.vertices.size());
  for (const auto& t : m.triangles) {
    for (int i : t) CHECK((i >= 0 && i < nv));
    CHECK(area(m, t) > 0);
  }
  mesh::Mesh serial = mesh::render_surface(F, {64, 3.0, 1});
  CHECK(serial.vertices == m.vertices);
  CHECK(serial.triangles == m.triangles);

  std::ostringstream obj;
  mesh::write_obj(obj, mesh::render_surface(F, {8, 3.0, 1}));
  CHECK(obj.str().find("\nv ") != std::string::npos);

  // Every node inside the box has a mesh vertex within one grid step, widened
  // by the cotangent of the node's tangent cone for thin cones.
  const SurfaceData sd(F);
  const double h = 2 * cfg.bounds / cfg.resolution;
  int inside = 0, wide = 0;
  for (const auto& n : run_pipeline(endrass_params(), 4).nodes)
    for (const auto& p : n.orbit) {
      if (p[kW].is_zero()) continue;
      const double w = p[kW].to_double();
      const double c[3] = {p[kX].to_double() / w, p[kY].to_double() / w, p[kZ].to_double() / w};
      if (std::abs(c[0]) >= cfg.bounds || std::abs(c[1]) >= cfg.bounds || std::abs(c[2]) >= cfg.bounds) continue;
      ++inside;
      const double cot = cone_cotangent(sd, c);
      if (cot <= 2) ++wide;
      double best = 1e300;
      for (const auto& v : m.vertices) best = std::min(best, std::hypot(v[0] - c[0], v[1] - c[1], v[2] - c[2]));
      INFO(n.candidate.source.label << " distance " << best / h << " steps, cone cotangent " << cot);
      CHECK(best <= h * std::max(1.0, cot));
    }
  CHECK(inside == 144);
  CHECK(wide > 0);
}
