#pragma once

#include <array>
#include <ostream>
#include <vector>

#include "octic/surface.hpp"

namespace octic::mesh {

struct Mesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> triangles;  // zero-based vertex indices
};

struct RenderConfig {
  int resolution = 64;  // grid cells per axis, at least 8
  double bounds = 3.0;  // the box is [-bounds, bounds]^3
  int jobs = 1;
};

/// Zero set of F(x, y, z, 1) on a regular grid by marching tetrahedra (six
/// tetrahedra per cell). Grid values are computed in floating point; the
/// output does not depend on `jobs`.
Mesh render_surface(const Poly& F, const RenderConfig& config);

/// Wavefront OBJ: "v x y z" lines followed by one-based "f i j k" lines.
void write_obj(std::ostream& out, const Mesh& m);

}  // namespace octic::mesh
