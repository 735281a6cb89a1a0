#include "octic/surface.hpp"

#include <sstream>

#include "octic/error.hpp"

namespace octic {

namespace {

const QSqrt2 kSqrt2 = QSqrt2::sqrt2();
const QSqrt2 kHalfSqrt2 = QSqrt2(Rat(0), Rat(1, 2));

QSqrt2 qs(const Rat& a, const Rat& b) { return QSqrt2(a, b); }

Poly var(int v) { return Poly::variable(4, v); }
Poly cst(const QSqrt2& c) { return Poly::constant(4, c); }

// cos and sin of k pi/4, k in 0..7.
std::pair<QSqrt2, QSqrt2> eighth_turn(int k) {
  static const std::pair<QSqrt2, QSqrt2> table[8] = {
      {QSqrt2(1), QSqrt2(0)},  {kHalfSqrt2, kHalfSqrt2},   {QSqrt2(0), QSqrt2(1)},   {-kHalfSqrt2, kHalfSqrt2},
      {QSqrt2(-1), QSqrt2(0)}, {-kHalfSqrt2, -kHalfSqrt2}, {QSqrt2(0), QSqrt2(-1)}, {kHalfSqrt2, -kHalfSqrt2}};
  return table[((k % 8) + 8) % 8];
}

// Direction (sin, cos) of the angle k pi/8, scaled by a positive factor into Q(sqrt 2).
std::pair<QSqrt2, QSqrt2> scaled_half_eighth(int k) {
  const QSqrt2 t1 = kSqrt2 - QSqrt2(1);  // tan(pi/8)
  const QSqrt2 t3 = kSqrt2 + QSqrt2(1);  // tan(3 pi/8)
  switch (((k % 8) + 8) % 8) {
    case 0: return {QSqrt2(0), QSqrt2(1)};
    case 1: return {t1, QSqrt2(1)};
    case 2: return {QSqrt2(1), QSqrt2(1)};
    case 3: return {t3, QSqrt2(1)};
    case 4: return {QSqrt2(1), QSqrt2(0)};
    case 5: return {t3, QSqrt2(-1)};
    case 6: return {QSqrt2(1), QSqrt2(-1)};
    default: return {t1, QSqrt2(-1)};
  }
}

}  // namespace

bool OcticParams::normalized() const {
  return c.is_zero() && f.is_zero() && h.is_zero() && e == QSqrt2(-1);
}

OcticParams endrass_params() {
  OcticParams p;
  p.a = qs(Rat(-1, 4), Rat(-1, 4));
  p.b = qs(Rat(1), Rat(1, 2));
  p.c = QSqrt2(0);
  p.d = qs(Rat(1, 4), Rat(7, 8));
  p.e = QSqrt2(-1);
  p.f = QSqrt2(0);
  p.g = qs(Rat(1, 2), Rat(-1));
  p.h = QSqrt2(0);
  p.i = qs(Rat(-1, 16), Rat(-3, 4));
  return p;
}

OcticParams substitution_chain(const QSqrt2& a1_sq, const QSqrt2& d1_sq, const QSqrt2& i1_sq, const QSqrt2& b,
                               const QSqrt2& g) {
  const QSqrt2 two_minus = QSqrt2(2) - kSqrt2;
  const QSqrt2 two_plus = QSqrt2(2) + kSqrt2;
  OcticParams p;
  p.b = b;
  p.g = g;
  p.c = p.f = p.h = QSqrt2(0);
  p.e = QSqrt2(-1);
  p.a = QSqrt2(Rat(-1, 64)) * (QSqrt2(16) * b * b + a1_sq - two_minus * d1_sq - two_plus * i1_sq);
  p.d = QSqrt2(Rat(-1, 32)) *
        (QSqrt2(256) * p.a + QSqrt2(64) * b * b + QSqrt2(16) * b * g - kSqrt2 * d1_sq + kSqrt2 * i1_sq);
  p.i = QSqrt2(Rat(-1, 4)) * (QSqrt2(8) * (QSqrt2(3) - QSqrt2(2) * kSqrt2) * (QSqrt2(4) * p.a + b * b) +
                              QSqrt2(4) * two_minus * (b * g + QSqrt2(2) * p.d) + g * g - i1_sq);
  return p;
}

AuxParams solve_aux(const OcticParams& p) {
  if (!p.normalized()) throw MathError("auxiliary parameters need c = f = h = 0 and e = -1");
  const QSqrt2 two_minus = QSqrt2(2) - kSqrt2;
  const QSqrt2 two_plus = QSqrt2(2) + kSqrt2;
  AuxParams aux;
  aux.i1_sq = QSqrt2(4) * p.i + QSqrt2(8) * (QSqrt2(3) - QSqrt2(2) * kSqrt2) * (QSqrt2(4) * p.a + p.b * p.b) +
              QSqrt2(4) * two_minus * (p.b * p.g + QSqrt2(2) * p.d) + p.g * p.g;
  aux.d1_sq = (QSqrt2(32) * p.d + QSqrt2(256) * p.a + QSqrt2(64) * p.b * p.b + QSqrt2(16) * p.b * p.g +
               kSqrt2 * aux.i1_sq) /
              kSqrt2;
  aux.a1_sq = QSqrt2(-64) * p.a - QSqrt2(16) * p.b * p.b + two_minus * aux.d1_sq + two_plus * aux.i1_sq;
  return aux;
}

Poly plane_form(int j) {
  auto [c, s] = eighth_turn(j);
  return cst(c) * var(kX) + cst(s) * var(kY) - var(kW);
}

Poly build_P() {
  Poly p = cst(QSqrt2(1));
  for (int j = 0; j < 8; ++j) p *= plane_form(j);
  return p;
}

Poly build_P_closed_form() {
  const Poly x = var(kX), y = var(kY), w = var(kW);
  const Poly w2 = w * w;
  return cst(QSqrt2(Rat(1, 4))) * (x * x - w2) * (y * y - w2) * ((x + y) * (x + y) - cst(QSqrt2(2)) * w2) *
         ((x - y) * (x - y) - cst(QSqrt2(2)) * w2);
}

Poly build_q(const OcticParams& p) {
  const Poly x = var(kX), y = var(kY), z = var(kZ), w = var(kW);
  const Poly s = x * x + y * y;
  return cst(p.a) * s * s + s * (cst(p.b) * z * z + cst(p.c) * z * w + cst(p.d) * w * w) + cst(p.e) * z.pow(4) +
         cst(p.f) * z.pow(3) * w + cst(p.g) * z * z * w * w + cst(p.h) * z * w.pow(3) + cst(p.i) * w.pow(4);
}

Poly build_Q(const OcticParams& p) {
  Poly q = build_q(p);
  return q * q;
}

Poly build_F(const OcticParams& p) { return build_P() - build_Q(p); }

std::string GroupElement::label() const {
  std::ostringstream os;
  os << "phi^" << rotation;
  if (reflection) os << " tau";
  if (z_flip) os << " zeta";
  return os.str();
}

GroupElement identity_element() {
  GroupElement g;
  for (int i = 0; i < 4; ++i) g.m[i][i] = QSqrt2(1);
  return g;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  GroupElement r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      QSqrt2 s;
      for (int k = 0; k < 4; ++k) s += a.m[i][k] * b.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

std::vector<GroupElement> dihedral_group(int n, bool include_z2) {
  if (n != 1 && n != 2 && n != 4 && n != 8)
    throw MathError("D_n has matrix entries in Q(sqrt2) only for n in {1, 2, 4, 8}");
  const int step = 8 / n;  // rotation by 2 pi / n = step * pi / 4
  GroupElement phi = identity_element();
  auto [c, s] = eighth_turn(step);
  phi.m[0][0] = c;
  phi.m[0][1] = -s;
  phi.m[1][0] = s;
  phi.m[1][1] = c;
  GroupElement tau = identity_element();
  tau.m[1][1] = QSqrt2(-1);
  GroupElement zeta = identity_element();
  zeta.m[2][2] = QSqrt2(-1);

  std::vector<GroupElement> out;
  GroupElement rot = identity_element();
  for (int k = 0; k < n; ++k) {
    for (int r = 0; r < 2; ++r)
      for (int t = 0; t < (include_z2 ? 2 : 1); ++t) {
        GroupElement g = rot;
        if (r) g = g * tau;
        if (t) g = g * zeta;
        g.rotation = k;
        g.reflection = r != 0;
        g.z_flip = t != 0;
        out.push_back(g);
      }
    rot = rot * phi;
  }
  return out;
}

Poly act(const GroupElement& g, const Poly& p) {
  std::vector<Poly> images;
  for (int i = 0; i < 4; ++i) {
    Poly row(4);
    for (int j = 0; j < 4; ++j) row += cst(g.m[i][j]) * var(j);
    images.push_back(row);
  }
  return p.compose(images);
}

bool is_invariant(const Poly& p, const std::vector<GroupElement>& group) {
  for (const auto& g : group)
    if (!(act(g, p) == p)) return false;
  return true;
}

Poly ReflectionPlane::form() const { return cst(x_coeff) * var(kX) + cst(y_coeff) * var(kY); }

std::vector<ReflectionPlane> reflection_planes(int n) {
  if (n != 1 && n != 2 && n != 4 && n != 8) throw MathError("reflection planes need n in {1, 2, 4, 8}");
  std::vector<ReflectionPlane> out;
  for (int j = 0; j < n; ++j) {
    auto [s, c] = scaled_half_eighth(j * 8 / n);
    out.push_back({j, n, s, -c});
  }
  return out;
}

GroupElement plane_reflection(int j, int n) {
  // Reflection across the line at angle j pi/n in the (x, y)-plane: rotation by 2 j pi/n after tau.
  auto [c, s] = eighth_turn(8 * j / n);
  GroupElement g = identity_element();
  g.m[0][0] = c;
  g.m[0][1] = s;
  g.m[1][0] = s;
  g.m[1][1] = -c;
  return g;
}

Point apply(const GroupElement& g, const Point& p) {
  if (p.size() != 4) throw ArityMismatch("projective points in P^3 have four coordinates");
  Point out;
  for (int i = 0; i < 4; ++i) {
    TowerElem s;
    for (int j = 0; j < 4; ++j)
      if (!g.m[i][j].is_zero()) s += TowerElem(g.m[i][j]) * p[j];
    out.push_back(s);
  }
  return out;
}

Point normalize_point(const Point& p) {
  for (const auto& c : p)
    if (!c.is_zero()) {
      TowerElem inv = c.inverse();
      Point out;
      for (const auto& v : p) out.push_back(v * inv);
      return out;
    }
  throw MathError("the zero vector is not a projective point");
}

bool projectively_equal(const Point& a, const Point& b) {
  if (a.size() != b.size()) return false;
  Point na = normalize_point(a), nb = normalize_point(b);
  for (std::size_t i = 0; i < na.size(); ++i) {
    if (na[i].is_zero() != nb[i].is_zero()) return false;
    if (std::abs(na[i].to_double() - nb[i].to_double()) > 1e-9 * (1 + std::abs(na[i].to_double()))) return false;
    if (!equal_across(na[i], nb[i])) return false;
  }
  return true;
}

std::vector<Point> orbit_of_point(const Point& p, const std::vector<GroupElement>& group) {
  std::vector<Point> out;
  for (const auto& g : group) {
    Point img = normalize_point(apply(g, p));
    bool seen = false;
    for (const auto& q : out)
      if (projectively_equal(q, img)) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(img);
  }
  return out;
}

int orbit_length_formula(const Point& p, int n) {
  if (p.size() != 4) throw ArityMismatch("projective points in P^3 have four coordinates");
  if (!p[kY].is_zero()) throw MathError("point does not lie on the plane E_0 = {y = 0}");
  if (p[kX].is_zero()) return 1;
  if (n % 2 == 0 && p[kZ].is_zero() && p[kW].is_zero()) return n / 2;
  return n;
}

}  // namespace octic
