#include "octic/curves.hpp"

#include <algorithm>
#include <map>

#include "octic/algebraic.hpp"
#include "octic/elimination.hpp"
#include "octic/error.hpp"
#include "octic/linalg.hpp"

namespace octic {

namespace {

const QSqrt2 kSqrt2 = QSqrt2::sqrt2();

Poly pvar(int v) { return Poly::variable(3, v); }
Poly pcst(const QSqrt2& c) { return Poly::constant(3, c); }

TowerElem evaluate_at(const Poly& p, const PlanePoint& pt) {
  return p.evaluate(std::span<const TowerElem>(pt.data(), pt.size()));
}

// Coefficients of p (arity 3) in `zvar`, each evaluated at `u` for variable `uvar`.
UPoly<TowerElem> fiber(const Poly& p, int uvar, int zvar, const TowerElem& u) {
  std::vector<TowerElem> out;
  for (const auto& c : p.coefficients_in(zvar)) out.push_back(c.to_upoly(uvar)(u));
  return UPoly<TowerElem>(std::move(out));
}

template <class K>
UPoly<K> gcd_all(const std::vector<UPoly<K>>& polys) {
  UPoly<K> g;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p.monic() : gcd(g, p);
  }
  return g;
}

bool contains_point(const std::vector<PlanePoint>& list, const PlanePoint& p) {
  for (const auto& q : list)
    if (plane_points_equal(q, p)) return true;
  return false;
}

bool contains_value(const std::vector<TowerElem>& list, const TowerElem& v) {
  for (const auto& q : list)
    if (equal_across(q, v)) return true;
  return false;
}

// Affine chart w = 1 after the shear u -> u + lambda z, with the two eliminants.
struct ChartElimination {
  Rat lambda;
  Poly f{3}, fu{3}, fz{3};
  UPoly<QSqrt2> eliminant;  // squarefree gcd of Res_z(f, f_u) and Res_z(f, f_z)
};

ChartElimination eliminate_chart(const Poly& curve) {
  const int deg = curve.total_degree();
  const Poly chart = curve.dehomogenize(2);
  for (long k : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 5L, 7L}) {
    const Rat lambda(k);
    // The z^deg coefficient of the sheared chart is curve(lambda, 1, 0).
    if (curve.evaluate(std::vector<QSqrt2>{QSqrt2(lambda), QSqrt2(1), QSqrt2(0)}).is_zero()) continue;
    ChartElimination e;
    e.lambda = lambda;
    e.f = chart.substitute(0, pvar(0) + pcst(QSqrt2(lambda)) * pvar(1));
    if (e.f.degree_in(1) != deg) continue;
    e.fu = e.f.partial(0);
    e.fz = e.f.partial(1);
    Poly r1 = resultant(e.f, e.fu, 1);
    Poly r2 = resultant(e.f, e.fz, 1);
    if (r1.is_zero() || r2.is_zero()) continue;
    e.eliminant = squarefree_part(gcd(r1.to_upoly(0), r2.to_upoly(0)));
    return e;
  }
  throw MathError("no shear of the chart gives nondegenerate eliminants");
}

// Monic squarefree gcd of the fibers of f, f_u, f_z above u.
UPoly<TowerElem> fiber_gcd(const ChartElimination& e, const TowerElem& u) {
  UPoly<TowerElem> h = gcd_all<TowerElem>({fiber(e.f, 0, 1, u), fiber(e.fu, 0, 1, u), fiber(e.fz, 0, 1, u)});
  if (h.degree() > 1) h = squarefree_part(h);
  return h;
}

// Polynomials in u (chart z = 1) whose common roots are the singular points on w = 0.
std::vector<UPoly<QSqrt2>> line_at_infinity_system(const Poly& curve) {
  std::vector<UPoly<QSqrt2>> out;
  std::vector<Poly> polys{curve, curve.partial(0), curve.partial(1), curve.partial(2)};
  for (const auto& p : polys) out.push_back(p.substitute(2, Poly(3)).dehomogenize(1).to_upoly(0));
  return out;
}

bool singular_at(const Poly& curve, const PlanePoint& p) {
  for (int v = 0; v < 3; ++v)
    if (!evaluate_at(curve.partial(v), p).is_zero()) return false;
  return evaluate_at(curve, p).is_zero();
}

void require_squarefree(const Poly& curve) {
  const int deg = curve.total_degree();
  // Lines through (a : b : 1) and (c : 1 : 0); a repeated component makes every restriction non-squarefree.
  const long lines[][3] = {{2, 3, 5}, {-3, 7, 2}, {5, -2, 11}, {13, 17, -3}, {1, 19, 23}};
  for (const auto& l : lines) {
    std::vector<Poly> images{pcst(QSqrt2(l[0])) + pcst(QSqrt2(l[2])) * pvar(0), pcst(QSqrt2(l[1])) + pvar(0),
                             pcst(QSqrt2(1))};
    UPoly<QSqrt2> r = curve.compose(images).to_upoly(0);
    if (r.degree() != deg) continue;
    if (gcd(r, r.derivative()).degree() == 0) return;
  }
  throw MathError("curve has a repeated component");
}

}  // namespace

std::string plane_name(PlaneId p) { return p == PlaneId::E0 ? "E0" : "E1"; }

PlanePoint normalize_plane_point(const PlanePoint& p) {
  for (int i : {2, 1, 0})
    if (!p[i].is_zero()) {
      TowerElem inv = p[i].inverse();
      return {p[0] * inv, p[1] * inv, p[2] * inv};
    }
  throw MathError("the zero vector is not a projective point");
}

bool plane_points_equal(const PlanePoint& a, const PlanePoint& b) {
  PlanePoint na = normalize_plane_point(a), nb = normalize_plane_point(b);
  for (int i = 0; i < 3; ++i)
    if (!equal_across(na[i], nb[i])) return false;
  return true;
}

std::string to_string(const PlanePoint& p) {
  return "(" + p[0].to_string() + " : " + p[1].to_string() + " : " + p[2].to_string() + ")";
}

PlaneCurve restrict(const Poly& F, PlaneId plane) {
  Poly sub(4);
  int first = kX;
  if (plane == PlaneId::E0) {
    sub = F.substitute(kY, Poly(4));
  } else {
    sub = F.substitute(kX, Poly::constant(4, QSqrt2(1) + kSqrt2) * Poly::variable(4, kY));
    first = kY;
  }
  PlaneCurve c;
  c.plane = plane;
  c.poly = Poly(3);
  for (const auto& [e, coef] : sub.terms()) c.poly.add_term({e[first], e[kZ], e[kW], 0}, coef);
  return c;
}

Poly DivisorDecomposition::reassemble() const {
  Poly p = residual.scale(scalar);
  for (const auto& [form, mult] : components) p *= form.pow(mult);
  return p;
}

DivisorDecomposition divisor_decompose(const Poly& p, const std::vector<Poly>& expected,
                                       const std::vector<std::string>& names) {
  DivisorDecomposition d;
  Poly rest = p;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    int mult = 0;
    while (auto q = try_divide(rest, expected[k])) {
      rest = *q;
      ++mult;
    }
    if (mult == 0) {
      std::string name = k < names.size() ? names[k] : expected[k].to_string({"x", "z", "w"});
      throw MathError("expected factor " + name + " does not divide");
    }
    d.components.emplace_back(expected[k], mult);
  }
  d.scalar = QSqrt2(1);
  if (rest.total_degree() == 0) {
    d.scalar = rest.leading_term().second;
    rest = pcst(QSqrt2(1)).with_arity(p.arity());
  }
  d.residual = rest;
  return d;
}

std::vector<Poly> plane_lines(PlaneId plane) {
  const Poly u = pvar(0), w = pvar(2);
  if (plane == PlaneId::E0)
    return {u - w, u + w, u - pcst(kSqrt2) * w, u + pcst(kSqrt2) * w, w};
  const QSqrt2 t = kSqrt2 - QSqrt2(1);
  return {u - w, u + w, u - pcst(t) * w, u + pcst(t) * w};
}

std::vector<std::string> plane_line_names(PlaneId plane) {
  if (plane == PlaneId::E0) return {"L1", "L2", "L3", "L4", "L5"};
  return {"M1", "M2", "M3", "M4"};
}

QuarticCurve segre_reduce(const PlaneCurve& c) {
  QuarticCurve q;
  q.plane = c.plane;
  q.poly = Poly(3);
  for (const auto& [e, coef] : c.poly.terms()) {
    if (e[0] % 2 || e[1] % 2 || e[2] % 2)
      throw MathError("curve is not even in every coordinate (are c, f, h all zero?)");
    q.poly.add_term({e[0] / 2, e[1] / 2, e[2] / 2, 0}, coef);
  }
  return q;
}

Poly segre_lift(const Poly& quartic) {
  Poly p(quartic.arity());
  for (const auto& [e, coef] : quartic.terms()) p.add_term({2 * e[0], 2 * e[1], 2 * e[2], 2 * e[3]}, coef);
  return p;
}

SingularSearch singular_points(const Poly& curve) {
  if (curve.arity() != 3 || !curve.homogeneous_degree()) throw MathError("expected a homogeneous plane curve");
  require_squarefree(curve);
  SingularSearch out;
  auto add = [&](const PlanePoint& p) {
    PlanePoint n = normalize_plane_point(p);
    if (!contains_point(out.points, n)) out.points.push_back(n);
  };

  // Chart w = 1.
  ChartElimination e = eliminate_chart(curve);
  if (e.eliminant.degree() > 0) {
    RootIdentification ids = identify_real_roots(e.eliminant);
    for (const auto& u : ids.roots) {
      UPoly<TowerElem> h = fiber_gcd(e, u);
      if (h.degree() <= 0) continue;
      auto zs = solve_low_degree(h, u.tower());
      if (!zs) {
        out.unmatched.push_back("fiber of degree " + std::to_string(h.degree()) + " above u = " + u.to_string());
        continue;
      }
      if (static_cast<int>(zs->size()) < h.degree())
        out.unmatched.push_back("non-real singular point above u = " + u.to_string());
      for (const auto& z : *zs) add({u + TowerElem(e.lambda) * z, z, TowerElem(1)});
    }
    if (ids.residual.degree() > 0 && !fibers_have_no_common_root(ids.residual, {e.f, e.fu, e.fz}, 0, 1))
      out.unmatched.push_back("singular point above an unidentified root of " + ids.residual.to_string());
  }

  // Line w = 0 in the chart z = 1, then its vertex (1 : 0 : 0).
  UPoly<QSqrt2> h = gcd_all(line_at_infinity_system(curve));
  if (h.is_zero()) throw MathError("curve is singular along the line w = 0");
  if (h.degree() > 0) {
    RootIdentification ids = identify_real_roots(h);
    for (const auto& u : ids.roots) add({u, TowerElem(1), TowerElem(0)});
    if (ids.residual.degree() > 0)
      out.unmatched.push_back("non-real singular point on w = 0, roots of " + ids.residual.to_string());
  }
  PlanePoint vertex{TowerElem(1), TowerElem(0), TowerElem(0)};
  if (singular_at(curve, vertex)) add(vertex);
  return out;
}

SingularSetCheck verify_singular_set(const Poly& curve, const std::vector<PlanePoint>& known) {
  SingularSetCheck out;
  std::vector<PlanePoint> pts;
  for (const auto& p : known) {
    PlanePoint n = normalize_plane_point(p);
    if (contains_point(pts, n)) continue;
    if (!singular_at(curve, n)) out.diagnostics.push_back("known point " + to_string(n) + " is not singular");
    pts.push_back(n);
  }

  // Chart w = 1: group the known points by the sheared u-coordinate.
  ChartElimination e = eliminate_chart(curve);
  std::vector<TowerElem> us;
  std::vector<std::vector<TowerElem>> zs;
  for (const auto& p : pts) {
    if (p[2].is_zero()) continue;
    TowerElem u = p[0] - TowerElem(e.lambda) * p[1];
    std::size_t k = 0;
    while (k < us.size() && !equal_across(us[k], u)) ++k;
    if (k == us.size()) {
      us.push_back(u);
      zs.emplace_back();
    }
    if (!contains_value(zs[k], p[1])) zs[k].push_back(p[1]);
  }
  UPoly<QSqrt2> known_part(QSqrt2(1));
  if (!us.empty()) known_part = gcd(e.eliminant, annihilator(us));
  if (known_part.degree() != static_cast<int>(us.size()))
    out.diagnostics.push_back("eliminant has " + std::to_string(known_part.degree()) +
                              " roots conjugate to known ones, but " + std::to_string(us.size()) +
                              " known fibers");
  for (std::size_t k = 0; k < us.size(); ++k) {
    UPoly<TowerElem> h = fiber_gcd(e, us[k]);
    if (h.degree() != static_cast<int>(zs[k].size()))
      out.diagnostics.push_back("fiber above u = " + us[k].to_string() + " has " + std::to_string(h.degree()) +
                                " singular points, " + std::to_string(zs[k].size()) + " known");
  }
  UPoly<QSqrt2> rest = exact_div(e.eliminant, known_part);
  if (rest.degree() > 0 && !fibers_have_no_common_root(rest, {e.f, e.fu, e.fz}, 0, 1))
    out.diagnostics.push_back("singular point above a root of the eliminant with no known point");

  // Line w = 0.
  UPoly<QSqrt2> h = gcd_all(line_at_infinity_system(curve));
  if (h.is_zero()) {
    out.diagnostics.push_back("curve is singular along the line w = 0");
  } else {
    int on_line = 0;
    bool vertex_known = false;
    for (const auto& p : pts) {
      if (!p[2].is_zero()) continue;
      if (p[1].is_zero())
        vertex_known = true;
      else
        ++on_line;
    }
    if (h.degree() != on_line)
      out.diagnostics.push_back("line w = 0 carries " + std::to_string(h.degree()) + " singular points, " +
                                std::to_string(on_line) + " known");
    if (singular_at(curve, {TowerElem(1), TowerElem(0), TowerElem(0)}) != vertex_known)
      out.diagnostics.push_back("vertex (1 : 0 : 0) disagrees with the known list");
  }
  out.found = static_cast<int>(pts.size());
  out.ok = out.diagnostics.empty();
  return out;
}

std::vector<AxisContact> contact_points(const Poly& G, Axis axis) {
  const int ax = static_cast<int>(axis);
  const int other = ax == 1 ? 2 : 1;
  Poly r = G.substitute(ax, Poly(3));
  if (r.is_zero()) throw MathError("axis is contained in the curve");
  const int deg = r.total_degree();
  UPoly<QSqrt2> b = r.dehomogenize(other).to_upoly(0);
  std::vector<AxisContact> out;
  auto make = [&](const TowerElem& x, const TowerElem& o) {
    PlanePoint p{x, TowerElem(0), TowerElem(0)};
    p[other] = o;
    return normalize_plane_point(p);
  };
  for (const auto& [part, mult] : squarefree_decomposition(b)) {
    if (mult < 2 || part.degree() <= 0) continue;
    for (const auto& x : identify_real_roots(part).roots)
      out.push_back({make(x, TowerElem(1)), mult, !x.is_zero()});
  }
  const int at_infinity = deg - b.degree();
  if (at_infinity >= 2) out.push_back({make(TowerElem(1), TowerElem(0)), at_infinity, false});
  return out;
}

Poly ComponentSplit::reassemble() const {
  Poly p = Poly::constant(3, scalar);
  for (const auto& f : factors) p *= f;
  return p;
}

namespace {

// Divides by the leading coefficient; returns that coefficient.
QSqrt2 make_monic(Poly& p) {
  QSqrt2 lc = p.leading_term().second;
  p = p.scale(QSqrt2(1) / lc);
  return lc;
}

std::optional<Poly> line_through(const PlanePoint& p, const PlanePoint& q) {
  std::array<TowerElem, 3> l;
  try {
    l = {p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
  } catch (const FieldMismatch&) {
    return std::nullopt;
  }
  Poly line(3);
  for (int i = 0; i < 3; ++i) {
    if (l[i].is_zero()) continue;
    if (!l[i].in_base()) {
      // Scale by the first nonzero coordinate and retry in the base field.
      int f = 0;
      while (l[f].is_zero()) ++f;
      TowerElem inv = l[f].inverse();
      for (auto& c : l) c = c * inv;
      line = Poly(3);
      for (int k = 0; k < 3; ++k) {
        if (l[k].is_zero()) continue;
        if (!l[k].in_base()) return std::nullopt;
        line += pcst(l[k].base_value()) * pvar(k);
      }
      return line;
    }
    line += pcst(l[i].base_value()) * pvar(i);
  }
  if (line.is_zero()) return std::nullopt;
  return line;
}

// Coefficient list of a conic in the order X^2, XZ, XW, Z^2, ZW, W^2.
const Exponents kConicMonomials[6] = {{2, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0},
                                      {0, 2, 0, 0}, {0, 1, 1, 0}, {0, 0, 2, 0}};

TowerElem monomial_value(const Exponents& e, const PlanePoint& p) {
  TowerElem v(1);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < e[i]; ++k) v = v * p[i];
  return v;
}

// Conics through the given points, as a basis of the solution space over Q(sqrt 2).
std::vector<Poly> conics_through(const std::vector<PlanePoint>& points) {
  Matrix<QSqrt2> rows;
  for (const auto& p : points) {
    std::vector<TowerElem> vals;
    TowerPtr top;
    for (const auto& e : kConicMonomials) {
      vals.push_back(monomial_value(e, p));
      if (tower_depth(vals.back().tower()) > tower_depth(top)) top = vals.back().tower();
    }
    // One linear condition over Q(sqrt 2) per basis coefficient of the tower.
    const std::size_t n = std::size_t{1} << tower_depth(top);
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<QSqrt2> row;
      for (const auto& v : vals) row.push_back(v.coeffs_in(top)[b]);
      rows.push_back(row);
    }
  }
  std::vector<Poly> out;
  for (const auto& v : nullspace(rows, 6)) {
    Poly c(3);
    for (int k = 0; k < 6; ++k) c.add_term(kConicMonomials[k], v[k]);
    out.push_back(c);
  }
  return out;
}

// Writes R = alpha A^2 + beta A B + gamma B^2 if possible.
std::optional<std::array<QSqrt2, 3>> pencil_quadratic(const Poly& R, const Poly& A, const Poly& B) {
  std::array<Poly, 3> basis{A * A, A * B, B * B};
  std::map<Exponents, std::size_t> index;
  for (const auto& b : basis)
    for (const auto& [e, c] : b.terms()) index.try_emplace(e, index.size());
  for (const auto& [e, c] : R.terms()) index.try_emplace(e, index.size());
  Matrix<QSqrt2> m(index.size(), std::vector<QSqrt2>(4));
  for (int k = 0; k < 3; ++k)
    for (const auto& [e, c] : basis[k].terms()) m[index[e]][k] = c;
  for (const auto& [e, c] : R.terms()) m[index[e]][3] = -c;
  for (const auto& v : nullspace(m, 4)) {
    if (v[3].is_zero()) continue;
    QSqrt2 s = QSqrt2(1) / v[3];
    return std::array<QSqrt2, 3>{v[0] * s, v[1] * s, v[2] * s};
  }
  return std::nullopt;
}

}  // namespace

ComponentSplit split_components(const Poly& G, const std::vector<PlanePoint>& singular) {
  ComponentSplit out;
  Poly rest = G;
  std::vector<Poly> lines;
  for (std::size_t i = 0; i < singular.size(); ++i)
    for (std::size_t j = i + 1; j < singular.size(); ++j) {
      auto line = line_through(singular[i], singular[j]);
      if (!line) continue;
      make_monic(*line);
      if (std::find(lines.begin(), lines.end(), *line) != lines.end()) continue;
      lines.push_back(*line);
      while (auto q = try_divide(rest, *line)) {
        rest = *q;
        out.factors.push_back(*line);
      }
    }

  if (rest.total_degree() == 4 && out.factors.empty()) {
    // Two conics through four of the nodes: take them from the pencil of conics through those nodes.
    std::vector<PlanePoint> chart;
    for (const auto& p : singular)
      if (!p[2].is_zero()) chart.push_back(p);
    if (chart.size() >= 4) {
      std::vector<PlanePoint> four(chart.begin(), chart.begin() + 4);
      auto pencil = conics_through(four);
      if (pencil.size() == 2) {
        if (auto abc = pencil_quadratic(rest, pencil[0], pencil[1])) {
          auto [alpha, beta, gamma] = *abc;
          // alpha A^2 + beta A B + gamma B^2 = alpha (A - r1 B)(A - r2 B) with alpha r^2 + beta r + gamma = 0.
          if (!alpha.is_zero()) {
            QSqrt2 disc = beta * beta - QSqrt2(4) * alpha * gamma;
            if (auto sq = sqrt_in_field(disc)) {
              QSqrt2 r1 = (-beta + *sq) / (QSqrt2(2) * alpha), r2 = (-beta - *sq) / (QSqrt2(2) * alpha);
              Poly c1 = pencil[0] + pencil[1].scale(-r1), c2 = pencil[0] + pencil[1].scale(-r2);
              out.factors.push_back(c1);
              out.factors.push_back(c2);
              rest = exact_div(rest, c1 * c2);
            } else {
              out.conic_pair_over_extension = true;
            }
          }
        }
      }
    }
  }
  if (rest.total_degree() > 0) out.factors.push_back(rest);
  out.scalar = QSqrt2(1);
  for (auto& f : out.factors) out.scalar *= make_monic(f);
  out.scalar *= rest.total_degree() == 0 ? rest.leading_term().second : QSqrt2(1);
  if (!(out.reassemble() == G)) throw MathError("component split does not reassemble");
  return out;
}

QSqrt2 conic_determinant(const Poly& conic) {
  if (conic.homogeneous_degree() != 2) throw MathError("expected a conic");
  const QSqrt2 half(Rat(1, 2));
  auto c = [&](int k) { return conic.coeff(kConicMonomials[k]); };
  Matrix<QSqrt2> m{{c(0), half * c(1), half * c(2)}, {half * c(1), c(3), half * c(4)}, {half * c(2), half * c(4), c(5)}};
  return determinant(m);
}

IrreducibilityVerdict irreducibility_check(const Poly& G, const PlanePoint& node) {
  if (G.arity() != 3 || G.homogeneous_degree() != 4)
    throw MathError("projection from a node needs a plane quartic");
  PlanePoint n = normalize_plane_point(node);
  if (n[2].is_zero() || !n[0].in_base() || !n[1].in_base())
    throw MathError("node must be an affine point with coordinates in Q(sqrt2)");
  const QSqrt2 x0 = n[0].base_value(), z0 = n[1].base_value();
  // h(u, v) = G(x0 + u, z0 + v, 1)
  Poly h = G.compose({pvar(0) + pcst(x0), pvar(1) + pcst(z0), pcst(QSqrt2(1))});

  std::array<UPoly<QSqrt2>, 5> c;  // c[k](t) = degree-k part of h at (1, t)
  std::array<std::vector<QSqrt2>, 5> cv;
  for (auto& v : cv) v.assign(5, QSqrt2(0));
  for (const auto& [e, coef] : h.terms()) cv[e[0] + e[1]][e[1]] += coef;
  for (int k = 0; k < 5; ++k) c[k] = UPoly<QSqrt2>(cv[k]);

  IrreducibilityVerdict v;
  const QSqrt2 disc2 = cv[2][1] * cv[2][1] - QSqrt2(4) * cv[2][0] * cv[2][2];
  v.node_ok = c[0].is_zero() && c[1].is_zero() && !disc2.is_zero();
  if (!v.node_ok) throw MathError("point is not a node of the curve");

  const bool vertical = cv[2][2].is_zero() && cv[3][3].is_zero() && cv[4][4].is_zero();
  v.linear_factor_through_node = vertical || gcd_all<QSqrt2>({c[2], c[3], c[4]}).degree() > 0;

  v.branch_polynomial = c[3] * c[3] - UPoly<QSqrt2>(QSqrt2(4)) * c[2] * c[4];
  if (v.branch_polynomial.is_zero()) {
    v.branch_polynomial_square = true;
  } else {
    // Homogenized to degree 6; the missing degree is a root at t = infinity.
    bool odd = (6 - v.branch_polynomial.degree()) % 2 != 0;
    for (const auto& [part, mult] : squarefree_decomposition(v.branch_polynomial))
      if (mult % 2 == 1 && part.degree() > 0) odd = true;
    v.branch_polynomial_square = !odd;
  }
  v.irreducible = !v.linear_factor_through_node && !v.branch_polynomial_square;

  for (long p : {7L, 17L, 23L}) {
    auto r = modular_irreducible(G, p);
    if (!r) continue;
    v.oracle_prime = static_cast<int>(p);
    v.oracle_no_factor = *r;
    if (*r) break;
  }
  if (v.oracle_prime == 0)
    v.oracle_note = "no usable prime";
  else if (!v.oracle_no_factor)
    v.oracle_note = "factor found modulo every prime tried";
  return v;
}

namespace {

// Homogeneous forms of degree <= 4 in three variables over F_p, dense by exponent.
class ModForm {
 public:
  ModForm(long p, int degree) : p_(p), deg_(degree), c_((degree + 1) * (degree + 1), 0) {}
  long p() const { return p_; }
  int degree() const { return deg_; }
  long& at(int i, int j) { return c_[i * (deg_ + 1) + j]; }  // X^i Z^j W^(deg-i-j)
  long at(int i, int j) const { return c_[i * (deg_ + 1) + j]; }
  bool is_zero() const {
    for (long v : c_)
      if (v) return false;
    return true;
  }

 private:
  long p_;
  int deg_;
  std::vector<long> c_;
};

long mod(long a, long p) { return ((a % p) + p) % p; }

long inv_mod(long a, long p) {
  long r = 1, b = mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::optional<long> reduce_rat(const Rat& r, long p) {
  mpz_class den = r.get_den() % p;
  if (den == 0) return std::nullopt;
  mpz_class num = r.get_num() % p;
  return mod(num.get_si(), p) * inv_mod(den.get_si(), p) % p;
}

// True if the quartic form g is divisible by the form d (degree 1 or 2), by
// division with respect to the lexicographic order X > Z > W.
bool divides_mod(const ModForm& d, ModForm g) {
  const long p = g.p();
  const int dd = d.degree(), dg = g.degree();
  // Leading monomial of d in lex order.
  int li = -1, lj = -1;
  for (int i = dd; i >= 0 && li < 0; --i)
    for (int j = dd - i; j >= 0; --j)
      if (d.at(i, j)) {
        li = i;
        lj = j;
        break;
      }
  const long linv = inv_mod(d.at(li, lj), p);
  for (int i = dg; i >= 0; --i)
    for (int j = dg - i; j >= 0; --j) {
      long c = g.at(i, j);
      if (!c) continue;
      const int qi = i - li, qj = j - lj, qk = (dg - i - j) - (dd - li - lj);
      if (qi < 0 || qj < 0 || qk < 0) return false;
      const long f = c * linv % p;
      for (int a = 0; a <= dd; ++a)
        for (int b = 0; b <= dd - a; ++b)
          if (d.at(a, b)) g.at(qi + a, qj + b) = mod(g.at(qi + a, qj + b) - f * d.at(a, b), p);
    }
  return g.is_zero();
}

// Calls fn on every nonzero form of the given degree, up to scaling.
template <class Fn>
bool any_projective_form(long p, int degree, Fn fn) {
  ModForm f(p, degree);
  std::vector<std::pair<int, int>> slots;
  for (int i = degree; i >= 0; --i)
    for (int j = degree - i; j >= 0; --j) slots.emplace_back(i, j);
  for (std::size_t lead = 0; lead < slots.size(); ++lead) {
    // Coefficients before `lead` are 0, the one at `lead` is 1, the rest run over F_p.
    const std::size_t free = slots.size() - lead - 1;
    std::vector<long> digits(free, 0);
    while (true) {
      ModForm g(p, degree);
      g.at(slots[lead].first, slots[lead].second) = 1;
      for (std::size_t k = 0; k < free; ++k) g.at(slots[lead + 1 + k].first, slots[lead + 1 + k].second) = digits[k];
      if (fn(g)) return true;
      std::size_t k = 0;
      while (k < free && ++digits[k] == p) digits[k++] = 0;
      if (k == free) break;
    }
  }
  return false;
}

}  // namespace

std::optional<bool> modular_irreducible(const Poly& G, long p) {
  if (G.arity() != 3 || G.homogeneous_degree() != 4) throw MathError("modular search needs a plane quartic");
  long s = 0;
  while (s < p && (s * s) % p != 2) ++s;
  if (s == p) return std::nullopt;
  ModForm g(p, 4);
  for (const auto& [e, c] : G.terms()) {
    auto a = reduce_rat(c.a(), p), b = reduce_rat(c.b(), p);
    if (!a || !b) return std::nullopt;
    g.at(e[0], e[1]) = (*a + *b * s) % p;
  }
  if (g.is_zero()) return std::nullopt;
  if (any_projective_form(p, 1, [&](const ModForm& l) { return divides_mod(l, g); })) return false;
  if (any_projective_form(p, 2, [&](const ModForm& q) { return divides_mod(q, g); })) return false;
  return true;
}

}  // namespace octic
