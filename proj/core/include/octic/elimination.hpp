#pragma once

#include <deque>
#include <vector>

#include "octic/linalg.hpp"
#include "octic/mpoly.hpp"
#include "octic/upoly.hpp"

namespace octic {

namespace detail {

template <class R>
Matrix<R> sylvester(const std::vector<R>& p, const std::vector<R>& q, const R& zero) {
  // p, q hold coefficients from the constant term upward.
  const int m = static_cast<int>(p.size()) - 1;
  const int n = static_cast<int>(q.size()) - 1;
  Matrix<R> s(m + n, std::vector<R>(m + n, zero));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + k] = p[m - k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s[n + i][i + k] = q[n - k];
  return s;
}

}  // namespace detail

/// Resultant of p and q with respect to `var`, as the determinant of the
/// Sylvester matrix over the ring of the remaining variables. Convention:
/// Res(A, B) = lc(A)^deg(B) * prod B(alpha) over the roots alpha of A.
template <class K>
MPoly<K> resultant(const MPoly<K>& p, const MPoly<K>& q, int var) {
  if (p.arity() != q.arity()) throw ArityMismatch("resultant of polynomials with different arities");
  if (p.is_zero() || q.is_zero()) return MPoly<K>(p.arity());
  const int m = p.degree_in(var);
  const int n = q.degree_in(var);
  if (m == 0 && n == 0) throw MathError("both polynomials are constant in the eliminated variable");
  if (m == 0) return p.pow(n);
  if (n == 0) return q.pow(m);

  std::vector<int> others;
  for (int i = 0; i < p.arity(); ++i)
    if (i != var && (p.uses_variable(i) || q.uses_variable(i))) others.push_back(i);

  auto pc = p.coefficients_in(var);
  auto qc = q.coefficients_in(var);
  if (others.size() <= 1) {
    // Dense path: entries are univariate in the single remaining variable.
    const int t = others.empty() ? (var == 0 ? 1 % p.arity() : 0) : others[0];
    std::vector<UPoly<K>> pu, qu;
    for (const auto& c : pc) pu.push_back(c.to_upoly(t));
    for (const auto& c : qc) qu.push_back(c.to_upoly(t));
    auto s = detail::sylvester(pu, qu, UPoly<K>());
    UPoly<K> det = bareiss_determinant(std::move(s), [](const UPoly<K>& a, const UPoly<K>& b) {
      return exact_div(a, b);
    }, UPoly<K>(K(1)));
    return MPoly<K>::from_upoly(p.arity(), t, det);
  }
  auto s = detail::sylvester(pc, qc, MPoly<K>(p.arity()));
  return bareiss_determinant(std::move(s), [](const MPoly<K>& a, const MPoly<K>& b) {
    return exact_div(a, b);
  }, MPoly<K>::constant(p.arity(), K(1)));
}

/// Discriminant of p with respect to `var`: (-1)^(n(n-1)/2) Res(p, dp/dvar) / lc.
template <class K>
MPoly<K> discriminant(const MPoly<K>& p, int var) {
  const int n = p.degree_in(var);
  if (n < 1) throw MathError("discriminant needs positive degree in the variable");
  MPoly<K> r = exact_div(resultant(p, p.partial(var), var), p.coefficients_in(var)[n]);
  return ((n * (n - 1) / 2) % 2 == 0) ? r : -r;
}

/// Inverse of c modulo m, or the nontrivial common factor gcd(c, m) when c is a zero divisor.
template <class K>
struct ModInverse {
  bool invertible;
  UPoly<K> value;  // inverse when invertible, else gcd(c, m)
};

template <class K>
ModInverse<K> inverse_mod(const UPoly<K>& c, const UPoly<K>& m) {
  // Extended Euclid tracking the cofactor of c.
  UPoly<K> r0 = m, r1 = c % m;
  UPoly<K> s0, s1(K(1));
  if (r1.is_zero()) return {false, m.monic()};
  while (!r1.is_zero()) {
    auto [quo, rem] = divmod(r0, r1);
    UPoly<K> s2 = s0 - quo * s1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() > 0) return {false, r0.monic()};
  return {true, (s0.scale(K(1) / r0.lc())) % m};
}

namespace detail {

template <class K>
struct ModulusSplit {
  UPoly<K> left;
  UPoly<K> right;
};

// Polynomial in z whose coefficients are residues modulo m(x).
template <class K>
using ZPoly = std::vector<UPoly<K>>;

template <class K>
void reduce_zpoly(ZPoly<K>& p, const UPoly<K>& m) {
  for (auto& c : p) c = c % m;
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

template <class K>
UPoly<K> leading_inverse(const ZPoly<K>& p, const UPoly<K>& m) {
  auto inv = inverse_mod(p.back(), m);
  if (!inv.invertible) throw ModulusSplit<K>{inv.value, exact_div(m, inv.value)};
  return inv.value;
}

template <class K>
ZPoly<K> zpoly_rem(ZPoly<K> a, const ZPoly<K>& b, const UPoly<K>& m) {
  const UPoly<K> inv = leading_inverse(b, m);
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db) {
    UPoly<K> f = (a.back() * inv) % m;
    const int shift = static_cast<int>(a.size()) - 1 - db;
    for (int j = 0; j <= db; ++j) a[shift + j] = (a[shift + j] - f * b[j]) % m;
    reduce_zpoly(a, m);
  }
  return a;
}

}  // namespace detail

/// Decides, without computing roots of r, whether the bivariate polynomials
/// `polys` (in xvar, zvar) have a common zero (x0, z0) over the algebraic
/// closure with r(x0) = 0. Runs the Euclidean algorithm in z over K[x]/(r),
/// splitting r whenever a leading coefficient turns out to be a zero divisor.
/// Returns true iff there is no common zero.
template <class K>
bool fibers_have_no_common_root(const UPoly<K>& r, const std::vector<MPoly<K>>& polys, int xvar, int zvar) {
  std::vector<detail::ZPoly<K>> base;
  for (const auto& p : polys) {
    detail::ZPoly<K> z;
    for (const auto& c : p.coefficients_in(zvar)) z.push_back(c.to_upoly(xvar));
    base.push_back(std::move(z));
  }
  std::deque<UPoly<K>> work{squarefree_part(r)};
  while (!work.empty()) {
    UPoly<K> m = work.front();
    work.pop_front();
    if (m.degree() <= 0) continue;
    try {
      detail::ZPoly<K> g;
      for (auto p : base) {
        detail::reduce_zpoly(p, m);
        while (!p.empty()) {
          detail::ZPoly<K> rem = g.empty() ? g : detail::zpoly_rem(g, p, m);
          g = std::move(p);
          p = std::move(rem);
        }
      }
      if (g.empty()) return false;  // every polynomial vanishes on the whole fiber
      detail::leading_inverse(g, m);
      if (g.size() > 1) return false;  // a common root above every root of m
    } catch (const detail::ModulusSplit<K>& s) {
      work.push_back(s.left);
      work.push_back(s.right);
    }
  }
  return true;
}

}  // namespace octic
