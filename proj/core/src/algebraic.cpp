#include "octic/algebraic.hpp"

#include <algorithm>
#include <cmath>

#include "octic/error.hpp"
#include "octic/linalg.hpp"
#include "octic/roots.hpp"

namespace octic {

namespace {

struct Cx {
  mpf_class re, im;
};

Cx add(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx sub(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx mul(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
mpf_class norm2(const Cx& a) { return a.re * a.re + a.im * a.im; }
Cx div(const Cx& a, const Cx& b) {
  mpf_class d = norm2(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

mpf_class to_mpf(const QSqrt2& x, unsigned prec) {
  mpf_class two(2, prec);
  mpf_class r(0, prec);
  r = sqrt(two);
  mpf_class a(x.a(), prec), b(x.b(), prec);
  mpf_class out(0, prec);
  out = a + b * r;
  return out;
}

Cx cx(const mpf_class& re, const mpf_class& im) { return {re, im}; }

Rat exact_rat(const mpf_class& f) {
  Rat q;
  mpq_set_f(q.get_mpq_t(), f.get_mpf_t());
  return q;
}

// Recognizes v + w sqrt2 from approximations of u = v + w*sqrt2 and its conjugate ubar = v - w*sqrt2.
std::optional<QSqrt2> recognize(const Cx& u, const Cx& ubar, const mpf_class& sqrt2, const mpf_class& eps) {
  Cx v{(u.re + ubar.re) / 2, (u.im + ubar.im) / 2};
  Cx w{(u.re - ubar.re) / (2 * sqrt2), (u.im - ubar.im) / (2 * sqrt2)};
  if (abs(v.im) > eps || abs(w.im) > eps) return std::nullopt;
  Rat vr = exact_rat(v.re), wr = exact_rat(w.re), e = exact_rat(eps);
  return QSqrt2(simplest_rational(vr - e, vr + e), simplest_rational(wr - e, wr + e));
}

bool same_root(const TowerElem& a, const TowerElem& b) {
  if (std::abs(a.to_double() - b.to_double()) > 1e-6 * (1 + std::abs(a.to_double()))) return false;
  return equal_across(a, b);
}

}  // namespace

UPoly<QSqrt2> conjugate(const UPoly<QSqrt2>& p) {
  return map_coeffs<QSqrt2>(p, [](const QSqrt2& c) { return c.conj(); });
}

UPoly<TowerElem> to_tower_poly(const UPoly<QSqrt2>& p) {
  return map_coeffs<TowerElem>(p, [](const QSqrt2& c) { return TowerElem(c); });
}

std::vector<ComplexApprox> complex_roots(const UPoly<QSqrt2>& p, unsigned prec) {
  const int n = p.degree();
  if (n < 1) throw MathError("complex_roots needs positive degree");
  UPoly<QSqrt2> mp = p.monic();
  std::vector<mpf_class> c;
  for (const auto& q : mp.coeffs()) c.push_back(to_mpf(q, prec));
  mpf_class bound(1, prec);
  for (int i = 0; i < n; ++i) {
    mpf_class a(abs(c[i]), prec);
    if (a + 1 > bound) bound = a + 1;
  }
  std::vector<Cx> z;
  const double r0 = std::min(bound.get_d(), 1e6) * 0.7;
  for (int k = 0; k < n; ++k) {
    double ang = 2 * M_PI * k / n + 0.4;
    z.push_back(cx(mpf_class(r0 * std::cos(ang), prec), mpf_class(r0 * std::sin(ang), prec)));
  }
  mpf_class tol(1, prec);
  mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), prec - 32);
  const mpf_class tol2 = tol * tol;
  for (int iter = 0; iter < 2000; ++iter) {
    bool done = true;
    for (int k = 0; k < n; ++k) {
      Cx val = cx(mpf_class(1, prec), mpf_class(0, prec));
      Cx der = cx(mpf_class(0, prec), mpf_class(0, prec));
      for (int i = n - 1; i >= 0; --i) {
        der = add(mul(der, z[k]), val);
        val = add(mul(val, z[k]), cx(c[i], mpf_class(0, prec)));
      }
      if (sgn(norm2(val)) == 0) continue;
      if (sgn(norm2(der)) == 0) der = cx(tol, mpf_class(0, prec));
      Cx ratio = div(val, der);
      Cx sum = cx(mpf_class(0, prec), mpf_class(0, prec));
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        Cx d = sub(z[k], z[j]);
        if (sgn(norm2(d)) == 0) d = cx(tol, mpf_class(0, prec));
        sum = add(sum, div(cx(mpf_class(1, prec), mpf_class(0, prec)), d));
      }
      Cx denom = sub(cx(mpf_class(1, prec), mpf_class(0, prec)), mul(ratio, sum));
      Cx step = sgn(norm2(denom)) == 0 ? ratio : div(ratio, denom);
      z[k] = sub(z[k], step);
      mpf_class scale = norm2(z[k]);
      if (scale < 1) scale = 1;
      if (norm2(step) > tol2 * scale) done = false;
    }
    if (done) break;
  }
  std::vector<ComplexApprox> out;
  for (auto& r : z) out.push_back({r.re, r.im});
  return out;
}

std::optional<std::vector<TowerElem>> solve_low_degree(const UPoly<TowerElem>& p, const TowerPtr& field) {
  if (p.is_zero()) throw MathError("zero polynomial has no isolated roots");
  const int n = p.degree();
  if (n > 2) return std::nullopt;
  std::vector<TowerElem> out;
  if (n == 0) return out;
  if (n == 1) {
    out.push_back(-p.coeffs()[0] / p.coeffs()[1]);
    return out;
  }
  const TowerElem& a = p.coeffs()[2];
  const TowerElem& b = p.coeffs()[1];
  const TowerElem& c = p.coeffs()[0];
  TowerElem disc = b * b - TowerElem(4) * a * c;
  int s = disc.sign();
  if (s < 0) return out;
  if (s == 0) {
    out.push_back(-b / (TowerElem(2) * a));
    return out;
  }
  TowerPtr base = field;
  for (const auto& k : p.coeffs()) base = common_tower(base, k.tower());
  TowerElem root = adjoin_sqrt_over(base, disc);
  TowerElem r1 = (-b - root) / (TowerElem(2) * a);
  TowerElem r2 = (-b + root) / (TowerElem(2) * a);
  if (compare(r1, r2) == Ordering::greater) std::swap(r1, r2);
  out.push_back(r1);
  out.push_back(r2);
  return out;
}

RootIdentification identify_real_roots(const UPoly<QSqrt2>& p) {
  RootIdentification out;
  UPoly<QSqrt2> g = squarefree_part(p);
  out.identified = UPoly<QSqrt2>(QSqrt2(1));
  out.residual = g;
  if (g.degree() <= 0) return out;

  std::vector<UPoly<QSqrt2>> factors;
  if (g.degree() <= 2) {
    factors.push_back(g);
  } else {
    const unsigned prec = 512;
    auto a = complex_roots(g, prec);
    auto b = complex_roots(conjugate(g), prec);
    mpf_class two(2, prec), sqrt2(0, prec);
    sqrt2 = sqrt(two);
    mpf_class eps(1, prec);
    mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), 120);
    std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
    UPoly<QSqrt2> rest = g;
    auto to_cx = [](const ComplexApprox& c) { return Cx{c.re, c.im}; };
    // Linear factors.
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size() && !used_a[i]; ++j) {
        if (used_b[j]) continue;
        auto gamma = recognize(to_cx(a[i]), to_cx(b[j]), sqrt2, eps);
        if (!gamma) continue;
        UPoly<QSqrt2> lin(std::vector<QSqrt2>{-*gamma, QSqrt2(1)});
        if (!divides(lin, rest)) continue;
        rest = exact_div(rest, lin);
        factors.push_back(lin);
        used_a[i] = used_b[j] = true;
      }
    // Quadratic factors from pairs of the remaining roots.
    std::vector<std::size_t> ra, rb;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!used_a[i]) ra.push_back(i);
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used_b[j]) rb.push_back(j);
    for (std::size_t i1 = 0; i1 < ra.size(); ++i1)
      for (std::size_t i2 = i1 + 1; i2 < ra.size(); ++i2) {
        if (used_a[ra[i1]] || used_a[ra[i2]]) continue;
        Cx x1 = to_cx(a[ra[i1]]), x2 = to_cx(a[ra[i2]]);
        Cx s = add(x1, x2), pr = mul(x1, x2);
        for (std::size_t j1 = 0; j1 < rb.size(); ++j1)
          for (std::size_t j2 = j1 + 1; j2 < rb.size(); ++j2) {
            if (used_b[rb[j1]] || used_b[rb[j2]] || used_a[ra[i1]]) continue;
            Cx y1 = to_cx(b[rb[j1]]), y2 = to_cx(b[rb[j2]]);
            auto sum = recognize(s, add(y1, y2), sqrt2, eps);
            if (!sum) continue;
            auto prod = recognize(pr, mul(y1, y2), sqrt2, eps);
            if (!prod) continue;
            UPoly<QSqrt2> quad(std::vector<QSqrt2>{*prod, -*sum, QSqrt2(1)});
            if (!divides(quad, rest)) continue;
            rest = exact_div(rest, quad);
            factors.push_back(quad);
            used_a[ra[i1]] = used_a[ra[i2]] = used_b[rb[j1]] = used_b[rb[j2]] = true;
          }
      }
  }

  UPoly<QSqrt2> residual = g;
  for (const auto& f : factors) {
    auto roots = solve_low_degree(to_tower_poly(f), nullptr);
    if (static_cast<int>(roots->size()) != f.degree()) continue;  // non-real roots stay in the residual
    residual = exact_div(residual, f);
    out.identified = out.identified * f;
    for (auto& r : *roots) out.roots.push_back(r);
  }
  out.identified = out.identified.monic();
  out.residual = residual.monic();
  std::sort(out.roots.begin(), out.roots.end(), [](const TowerElem& x, const TowerElem& y) {
    return x.to_double() < y.to_double();
  });
  // Guard against duplicates from coincident numeric candidates.
  std::vector<TowerElem> unique;
  for (auto& r : out.roots)
    if (unique.empty() || !same_root(unique.back(), r)) unique.push_back(r);
  out.roots = std::move(unique);
  return out;
}

UPoly<QSqrt2> minimal_polynomial(const TowerElem& x) {
  const TowerPtr& t = x.tower();
  const int dim = 1 << tower_depth(t);
  std::vector<std::vector<QSqrt2>> powers;
  TowerElem pw(1);
  for (int k = 0; k <= dim; ++k) {
    powers.push_back(pw.coeffs_in(t));
    Matrix<QSqrt2> m(dim, std::vector<QSqrt2>(k + 1));
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c <= k; ++c) m[r][c] = powers[c][r];
    auto ns = nullspace(m, k + 1);
    if (!ns.empty()) {
      std::vector<QSqrt2> v = ns[0];
      return UPoly<QSqrt2>(std::move(v)).monic();
    }
    pw *= x;
  }
  throw MathError("no minimal polynomial found within the tower degree");
}

UPoly<QSqrt2> annihilator(const std::vector<TowerElem>& values) {
  UPoly<QSqrt2> acc(QSqrt2(1));
  for (const auto& v : values) acc = lcm(acc, minimal_polynomial(v));
  return acc;
}

}  // namespace octic
