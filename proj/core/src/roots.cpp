#include "octic/roots.hpp"

#include <algorithm>

#include "octic/error.hpp"

namespace octic {

namespace {

// Coefficients of p(x + 1), by repeated synthetic division.
std::vector<Rat> taylor_shift_one(std::vector<Rat> c) {
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < n - 1; ++i)
    for (int j = n - 2; j >= i; --j) c[j] += c[j + 1];
  return c;
}

int sign_at(const UPoly<Rat>& p, const Rat& x) { return sgn(p(x)); }

Rat cauchy_bound(const UPoly<Rat>& p) {
  Rat m = 0;
  const Rat& lead = p.lc();
  for (int i = 0; i < p.degree(); ++i) {
    Rat r = abs(p.coeffs()[i] / lead);
    if (r > m) m = r;
  }
  return m + 1;
}

void isolate_squarefree(const UPoly<Rat>& f, const Rat& a, const Rat& b, int mult,
                        std::vector<RealRoot>& out) {
  int v = descartes_bound(f, a, b);
  if (v == 0) return;
  if (v == 1) {
    out.push_back({a, b, mult, f});
    return;
  }
  Rat mid = (a + b) / 2;
  isolate_squarefree(f, a, mid, mult, out);
  if (sign_at(f, mid) == 0) out.push_back({mid, mid, mult, f});
  isolate_squarefree(f, mid, b, mult, out);
}

}  // namespace

int sign_variations(const std::vector<Rat>& coeffs) {
  int prev = 0, count = 0;
  for (const auto& c : coeffs) {
    int s = sgn(c);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

int descartes_bound(const UPoly<Rat>& p, const Rat& a, const Rat& b) {
  // r(x) = p(a + (b - a) x) maps (0, 1) onto (a, b); x^n r(1/(1 + x)) maps (0, inf) onto (0, 1).
  const int n = p.degree();
  std::vector<Rat> c = p.coeffs();
  Rat scale = b - a;
  // p(a + x): shift by a.
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) c[j] += a * c[j + 1];
  Rat s = 1;
  for (int i = 0; i <= n; ++i) {
    c[i] *= s;
    s *= scale;
  }
  std::reverse(c.begin(), c.end());
  return sign_variations(taylor_shift_one(std::move(c)));
}

void RealRoot::refine(const Rat& w) {
  if (is_exact()) return;
  int slo = sign_at(factor, lo);
  while (hi - lo > w) {
    Rat mid = (lo + hi) / 2;
    int sm = sign_at(factor, mid);
    if (sm == 0) {
      lo = hi = mid;
      return;
    }
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

double RealRoot::approx() const { return Rat((lo + hi) / 2).get_d(); }

std::vector<RealRoot> isolate_real_roots(const UPoly<Rat>& p) {
  if (p.is_zero()) throw MathError("cannot isolate the roots of the zero polynomial");
  std::vector<RealRoot> out;
  for (const auto& [f, mult] : squarefree_decomposition(p)) {
    Rat bound = cauchy_bound(f);
    isolate_squarefree(f, -bound, bound, mult, out);
  }
  // Roots of different squarefree factors are distinct; shrink until disjoint.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        auto& r = out[i];
        auto& s = out[j];
        if (r.hi < s.lo || s.hi < r.lo) continue;
        if (r.is_exact() && s.is_exact()) continue;
        if (!r.is_exact()) r.refine(r.width() / 2);
        if (!s.is_exact()) s.refine(s.width() / 2);
        changed = true;
      }
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& x, const RealRoot& y) { return x.lo < y.lo; });
  return out;
}

Rat simplest_rational(const Rat& lo, const Rat& hi) {
  if (hi < lo) throw MathError("empty interval");
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rat(0);
  if (sgn(hi) < 0) return -simplest_rational(-hi, -lo);
  Integer fl = floor_rat(lo);
  if (Rat(fl) == lo) return lo;
  if (Rat(fl + 1) <= hi) return Rat(fl + 1);
  Rat frac = simplest_rational(1 / (hi - fl), 1 / (lo - fl));
  return Rat(fl) + 1 / frac;
}

}  // namespace octic
