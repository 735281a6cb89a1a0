#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "octic/error.hpp"
#include "octic/rational.hpp"

namespace octic {

namespace detail {
// Unqualified call so that the overload for the coefficient type is found by ADL.
template <class T>
bool coeff_is_zero(const T& t) {
  return is_zero(t);
}
}  // namespace detail

/// Dense univariate polynomial over a field K, coefficients stored from the
/// constant term upward. The zero polynomial has no coefficients and degree -1.
template <class K>
class UPoly {
 public:
  UPoly() = default;
  UPoly(const K& c) {  // NOLINT(google-explicit-constructor)
    if (!detail::coeff_is_zero(c)) c_.push_back(c);
  }
  explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly x() { return UPoly(std::vector<K>{K(0), K(1)}); }
  static UPoly monomial(const K& c, int n) {
    std::vector<K> v(n + 1, K(0));
    v[n] = c;
    return UPoly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : K(0); }
  const K& lc() const {
    if (c_.empty()) throw MathError("zero polynomial has no leading coefficient");
    return c_.back();
  }

  /// Horner evaluation at a point of any ring that K converts into.
  template <class V>
  V operator()(const V& x) const {
    V acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + V(*it);
    return acc;
  }

  UPoly derivative() const {
    std::vector<K> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * K(static_cast<long>(i)));
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (c_.empty()) return *this;
    K inv = K(1) / c_.back();
    return scale(inv);
  }

  UPoly scale(const K& k) const {
    std::vector<K> v = c_;
    for (auto& c : v) c *= k;
    return UPoly(std::move(v));
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> v(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(v));
  }
  UPoly operator-() const { return scale(K(-1)); }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      if (detail::coeff_is_zero(c_[i])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << coeff_string(c_[i]) << ")";
      if (i >= 1) os << "*" << var;
      if (i >= 2) os << "^" << i;
    }
    return os.str();
  }

 private:
  static std::string coeff_string(const Rat& r) { return r.get_str(); }
  template <class T>
  static std::string coeff_string(const T& t) {
    return t.to_string();
  }

  void trim() {
    while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<K> c_;
};

template <class K>
bool is_zero(const UPoly<K>& p) {
  return p.is_zero();
}

/// Quotient and remainder of a by b != 0.
template <class K>
std::pair<UPoly<K>, UPoly<K>> divmod(const UPoly<K>& a, const UPoly<K>& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.degree() < b.degree()) return {UPoly<K>(), a};
  std::vector<K> r = a.coeffs();
  std::vector<K> q(a.degree() - b.degree() + 1, K(0));
  const K inv = K(1) / b.lc();
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    if (is_zero(r[i])) continue;
    K f = r[i] * inv;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeffs()[j];
  }
  r.resize(db);
  return {UPoly<K>(std::move(q)), UPoly<K>(std::move(r))};
}

template <class K>
UPoly<K> operator%(const UPoly<K>& a, const UPoly<K>& b) {
  return divmod(a, b).second;
}

/// a / b, required to be exact.
template <class K>
UPoly<K> exact_div(const UPoly<K>& a, const UPoly<K>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InexactDivision("univariate division left a remainder");
  return q;
}

template <class K>
bool divides(const UPoly<K>& d, const UPoly<K>& a) {
  return divmod(a, d).second.is_zero();
}

/// Monic greatest common divisor.
template <class K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
  if (a.is_zero() && b.is_zero()) throw MathError("gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    UPoly<K> r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

template <class K>
UPoly<K> lcm(const UPoly<K>& a, const UPoly<K>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return exact_div(a * b, gcd(a, b)).monic();
}

/// Monic product of the distinct irreducible factors of p.
template <class K>
UPoly<K> squarefree_part(const UPoly<K>& p) {
  if (p.is_zero()) throw MathError("squarefree part of the zero polynomial");
  if (p.degree() == 0) return UPoly<K>(K(1));
  return exact_div(p, gcd(p, p.derivative())).monic();
}

/// Yun's squarefree decomposition: monic, pairwise coprime, squarefree factors
/// f_i with p = lc(p) * prod f_i^i. Only factors of positive degree are returned.
template <class K>
std::vector<std::pair<UPoly<K>, int>> squarefree_decomposition(const UPoly<K>& p) {
  if (p.is_zero()) throw MathError("squarefree decomposition of the zero polynomial");
  std::vector<std::pair<UPoly<K>, int>> out;
  if (p.degree() == 0) return out;
  UPoly<K> f = p.monic();
  UPoly<K> d = f.derivative();
  UPoly<K> a = gcd(f, d);
  UPoly<K> b = exact_div(f, a);
  UPoly<K> c = exact_div(d, a);
  UPoly<K> e = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UPoly<K> g = gcd(b, e);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = exact_div(b, g);
    c = exact_div(e, g);
    e = c - b.derivative();
    ++i;
  }
  return out;
}

/// Resultant with the convention Res(A, B) = lc(A)^deg(B) * prod B(alpha) over the roots of A.
template <class K>
K resultant(UPoly<K> a, UPoly<K> b) {
  if (a.is_zero() || b.is_zero()) return K(0);
  K acc(1);
  while (true) {
    const int m = a.degree();
    const int n = b.degree();
    if (n == 0) {
      K p(1);
      for (int i = 0; i < m; ++i) p *= b.lc();
      return acc * p;
    }
    if (m == 0) {
      K p(1);
      for (int i = 0; i < n; ++i) p *= a.lc();
      return acc * p;
    }
    UPoly<K> r = a % b;
    if (r.is_zero()) return K(0);
    if ((m % 2 == 1) && (n % 2 == 1)) acc = -acc;
    for (int i = 0; i < m - r.degree(); ++i) acc *= b.lc();
    a = std::move(b);
    b = std::move(r);
  }
}

/// (-1)^(n(n-1)/2) Res(p, p') / lc(p).
template <class K>
K discriminant(const UPoly<K>& p) {
  const int n = p.degree();
  if (n < 1) throw MathError("discriminant needs positive degree");
  K r = resultant(p, p.derivative()) / p.lc();
  return ((n * (n - 1) / 2) % 2 == 0) ? r : -r;
}

/// p(q(x)).
template <class K>
UPoly<K> compose(const UPoly<K>& p, const UPoly<K>& q) {
  UPoly<K> acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * q + UPoly<K>(p.coeffs()[i]);
  return acc;
}

template <class K2, class K, class Fn>
UPoly<K2> map_coeffs(const UPoly<K>& p, Fn fn) {
  std::vector<K2> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(fn(c));
  return UPoly<K2>(std::move(v));
}

}  // namespace octic
