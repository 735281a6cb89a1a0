#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace octic::mesh {

namespace {

struct Term {
  int ex, ey, ez;
  double coeff;
};

std::vector<Term> affine_terms(const Poly& F) {
  std::vector<Term> out;
  for (const auto& [e, c] : F.terms()) out.push_back({e[kX], e[kY], e[kZ], c.to_double()});
  return out;
}

double evaluate(const std::vector<Term>& terms, int max_deg, double x, double y, double z) {
  double px[16], py[16], pz[16];
  px[0] = py[0] = pz[0] = 1.0;
  for (int k = 1; k <= max_deg; ++k) {
    px[k] = px[k - 1] * x;
    py[k] = py[k - 1] * y;
    pz[k] = pz[k - 1] * z;
  }
  double acc = 0;
  for (const auto& t : terms) acc += t.coeff * px[t.ex] * py[t.ey] * pz[t.ez];
  return acc;
}

using Vec3 = std::array<double, 3>;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Corners of the unit cell by bit pattern (bit 0: x, bit 1: y, bit 2: z) and
// the six tetrahedra along the main diagonal 0 -> 7.
constexpr int kTets[6][4] = {{0, 1, 3, 7}, {0, 1, 5, 7}, {0, 2, 3, 7}, {0, 2, 6, 7}, {0, 4, 5, 7}, {0, 4, 6, 7}};

}  // namespace

Mesh render_surface(const Poly& F, const RenderConfig& config) {
  if (config.resolution < 8) throw std::invalid_argument("resolution must be at least 8");
  if (!(config.bounds > 0)) throw std::invalid_argument("bounds must be positive");
  const int n = config.resolution, m = n + 1;
  const double h = 2 * config.bounds / n;
  const auto terms = affine_terms(F);
  int max_deg = 0;
  for (const auto& t : terms) max_deg = std::max({max_deg, t.ex, t.ey, t.ez});
  if (max_deg > 15) throw std::invalid_argument("degree too large for rendering");

  auto coord = [&](int i) { return -config.bounds + h * i; };
  auto index = [&](int i, int j, int k) { return (static_cast<std::int64_t>(k) * m + j) * m + i; };
  std::vector<double> values(static_cast<std::size_t>(m) * m * m);
  const int jobs = std::clamp(config.jobs, 1, m);
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      for (int k = t; k < m; k += jobs)
        for (int j = 0; j < m; ++j)
          for (int i = 0; i < m; ++i) values[index(i, j, k)] = evaluate(terms, max_deg, coord(i), coord(j), coord(k));
    });
  for (auto& th : pool) th.join();

  Mesh mesh;
  std::unordered_map<std::uint64_t, int> edge_vertex;
  auto position = [&](std::int64_t id) {
    const int i = static_cast<int>(id % m), j = static_cast<int>((id / m) % m), k = static_cast<int>(id / m / m);
    return Vec3{coord(i), coord(j), coord(k)};
  };
  auto vertex_on_edge = [&](std::int64_t a, std::int64_t b) {
    if (a > b) std::swap(a, b);
    const std::uint64_t key = static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(m) * m * m + b;
    auto [it, inserted] = edge_vertex.try_emplace(key, static_cast<int>(mesh.vertices.size()));
    if (inserted) {
      const double fa = values[a], fb = values[b];
      const double s = fa / (fa - fb);
      const Vec3 pa = position(a), pb = position(b);
      mesh.vertices.push_back({pa[0] + s * (pb[0] - pa[0]), pa[1] + s * (pb[1] - pa[1]), pa[2] + s * (pb[2] - pa[2])});
    }
    return it->second;
  };
  const double min_area2 = 1e-20 * h * h * h * h;
  // Emits a triangle whose normal points from the negative to the positive side.
  auto emit = [&](int a, int b, int c, const Vec3& toward_positive) {
    const Vec3 nrm = cross(sub(mesh.vertices[b], mesh.vertices[a]), sub(mesh.vertices[c], mesh.vertices[a]));
    if (dot(nrm, nrm) <= min_area2) return;
    if (dot(nrm, toward_positive) < 0) std::swap(b, c);
    mesh.triangles.push_back({a, b, c});
  };

  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        std::int64_t corner[8];
        for (int c = 0; c < 8; ++c) corner[c] = index(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1));
        for (const auto& tet : kTets) {
          std::int64_t pos[4], neg[4];
          int np = 0, nn = 0;
          for (int v : tet) (values[corner[v]] > 0 ? pos[np++] : neg[nn++]) = corner[v];
          if (np == 0 || nn == 0) continue;
          Vec3 dir = sub(position(pos[0]), position(neg[0]));
          if (np == 1 || nn == 1) {
            const std::int64_t lone = np == 1 ? pos[0] : neg[0];
            const std::int64_t* others = np == 1 ? neg : pos;
            emit(vertex_on_edge(lone, others[0]), vertex_on_edge(lone, others[1]), vertex_on_edge(lone, others[2]), dir);
          } else {
            const int a = vertex_on_edge(pos[0], neg[0]), b = vertex_on_edge(pos[0], neg[1]);
            const int c = vertex_on_edge(pos[1], neg[1]), d = vertex_on_edge(pos[1], neg[0]);
            emit(a, b, c, dir);
            emit(a, c, d, dir);
          }
        }
      }
  return mesh;
}

void write_obj(std::ostream& out, const Mesh& m) {
  out.precision(9);
  out << "# zero set of F(x, y, z, 1)\n";
  for (const auto& v : m.vertices) out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& t : m.triangles) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

}  // namespace octic::mesh
