#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "octic/error.hpp"
#include "octic/rational.hpp"
#include "octic/upoly.hpp"

namespace octic {

constexpr int kMaxArity = 4;
using Exponents = std::array<int, kMaxArity>;

inline int total_degree(const Exponents& e) { return e[0] + e[1] + e[2] + e[3]; }

/// Graded lexicographic order with x > y > z > w, largest term first.
struct GrlexDescending {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// Sparse polynomial in up to four variables over a field K. Variables beyond
/// the arity always carry exponent 0. No zero coefficients are stored.
template <class K>
class MPoly {
 public:
  using TermMap = std::map<Exponents, K, GrlexDescending>;

  explicit MPoly(int arity = 4) : arity_(arity) {
    if (arity < 1 || arity > kMaxArity) throw ArityMismatch("arity must be between 1 and 4");
  }

  static MPoly constant(int arity, const K& c) {
    MPoly p(arity);
    p.add_term({0, 0, 0, 0}, c);
    return p;
  }
  static MPoly variable(int arity, int var) {
    MPoly p(arity);
    Exponents e{0, 0, 0, 0};
    e.at(var) = 1;
    p.add_term(e, K(1));
    return p;
  }
  static MPoly monomial(int arity, const Exponents& e, const K& c) {
    MPoly p(arity);
    p.add_term(e, c);
    return p;
  }

  int arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  K coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K(0) : it->second;
  }

  /// Adds c * monomial(e), dropping the term if the sum cancels.
  void add_term(const Exponents& e, const K& c) {
    for (int i = arity_; i < kMaxArity; ++i)
      if (e[i] != 0) throw ArityMismatch("exponent outside the polynomial's arity");
    if (detail::coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Leading term in the canonical order.
  const std::pair<const Exponents, K>& leading_term() const {
    if (terms_.empty()) throw MathError("zero polynomial has no leading term");
    return *terms_.begin();
  }

  int total_degree() const { return terms_.empty() ? -1 : octic::total_degree(terms_.begin()->first); }

  int degree_in(int var) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  bool uses_variable(int var) const { return degree_in(var) > 0; }

  /// Degree if every term has the same total degree (the zero polynomial is not homogeneous).
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = total_degree();
    for (const auto& [e, c] : terms_)
      if (octic::total_degree(e) != d) return std::nullopt;
    return d;
  }

  MPoly& operator+=(const MPoly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_arity(b);
    MPoly r(a.arity_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e;
        for (int i = 0; i < kMaxArity; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly operator-() const { return scale(K(-1)); }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  MPoly scale(const K& k) const {
    MPoly r(arity_);
    if (detail::coeff_is_zero(k)) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * k);
    return r;
  }

  MPoly pow(int n) const {
    MPoly r = constant(arity_, K(1));
    MPoly base = *this;
    while (n > 0) {
      if (n & 1) r *= base;
      n >>= 1;
      if (n) base *= base;
    }
    return r;
  }

  /// Formal partial derivative.
  MPoly partial(int var) const {
    if (var < 0 || var >= arity_) throw ArityMismatch("no such variable");
    MPoly r(arity_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents f = e;
      f[var] -= 1;
      r.add_term(f, c * K(static_cast<long>(e[var])));
    }
    return r;
  }

  /// Value at a point whose coordinates live in a ring V that K converts into.
  template <class V>
  V evaluate(std::span<const V> point) const {
    if (static_cast<int>(point.size()) != arity_) throw ArityMismatch("point has the wrong length");
    std::array<std::vector<V>, kMaxArity> powers;
    for (int i = 0; i < arity_; ++i) {
      int d = degree_in(i);
      powers[i].reserve(std::max(d, 0) + 1);
      powers[i].push_back(V(1));
      for (int k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * point[i]);
    }
    V acc(0);
    for (const auto& [e, c] : terms_) {
      V t(c);
      for (int i = 0; i < arity_; ++i)
        if (e[i] > 0) t = t * powers[i][e[i]];
      acc = acc + t;
    }
    return acc;
  }
  template <class V>
  V evaluate(const std::vector<V>& point) const {
    return evaluate(std::span<const V>(point));
  }

  /// Simultaneous substitution x_i -> images[i]; all images share one arity, which the result takes.
  MPoly compose(const std::vector<MPoly>& images) const {
    if (static_cast<int>(images.size()) != arity_) throw ArityMismatch("one image per variable required");
    const int out_arity = images[0].arity();
    std::array<std::vector<MPoly>, kMaxArity> powers;
    for (int i = 0; i < arity_; ++i) {
      if (images[i].arity() != out_arity) throw ArityMismatch("images must share an arity");
      int d = degree_in(i);
      powers[i].push_back(constant(out_arity, K(1)));
      for (int k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * images[i]);
    }
    MPoly r(out_arity);
    for (const auto& [e, c] : terms_) {
      MPoly t = constant(out_arity, c);
      for (int i = 0; i < arity_; ++i)
        if (e[i] > 0) t *= powers[i][e[i]];
      r += t;
    }
    return r;
  }

  /// Replaces one variable by a polynomial of the same arity.
  MPoly substitute(int var, const MPoly& replacement) const {
    check_arity(replacement);
    std::vector<MPoly> images;
    for (int i = 0; i < arity_; ++i) images.push_back(i == var ? replacement : variable(arity_, i));
    return compose(images);
  }

  /// Sets `var` to 1. The arity is kept; the variable simply no longer occurs.
  MPoly dehomogenize(int var) const {
    MPoly r(arity_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      f[var] = 0;
      r.add_term(f, c);
    }
    return r;
  }

  /// Coefficients with respect to `var`: result[k] multiplies var^k.
  std::vector<MPoly> coefficients_in(int var) const {
    std::vector<MPoly> out(std::max(degree_in(var), 0) + 1, MPoly(arity_));
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      f[var] = 0;
      out[e[var]].add_term(f, c);
    }
    return out;
  }

  /// The polynomial as a univariate one in `var`; no other variable may occur.
  UPoly<K> to_upoly(int var) const {
    std::vector<K> v(std::max(degree_in(var), 0) + 1, K(0));
    for (const auto& [e, c] : terms_) {
      for (int i = 0; i < kMaxArity; ++i)
        if (i != var && e[i] != 0) throw MathError("polynomial is not univariate in the requested variable");
      v[e[var]] = c;
    }
    return UPoly<K>(std::move(v));
  }

  static MPoly from_upoly(int arity, int var, const UPoly<K>& p) {
    MPoly r(arity);
    for (int k = 0; k <= p.degree(); ++k) {
      Exponents e{0, 0, 0, 0};
      e[var] = k;
      r.add_term(e, p.coeffs()[k]);
    }
    return r;
  }

  /// Same terms, viewed in a different arity (variables beyond the new arity must not occur).
  MPoly with_arity(int arity) const {
    MPoly r(arity);
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
  }

  std::string to_string(const std::vector<std::string>& names = {"x", "y", "z", "w"}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << coeff_string(c) << ")";
      for (int i = 0; i < arity_; ++i) {
        if (e[i] == 0) continue;
        os << "*" << names.at(i);
        if (e[i] > 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

 private:
  static std::string coeff_string(const Rat& r) { return r.get_str(); }
  template <class T>
  static std::string coeff_string(const T& t) {
    return t.to_string();
  }

  void check_arity(const MPoly& o) const {
    if (o.arity_ != arity_) throw ArityMismatch("polynomials have different arities");
  }

  int arity_;
  TermMap terms_;
};

template <class K>
bool is_zero(const MPoly<K>& p) {
  return p.is_zero();
}

/// a / b, required to be exact (multivariate division by leading terms).
template <class K>
MPoly<K> exact_div(MPoly<K> a, const MPoly<K>& b) {
  if (b.is_zero()) throw DivisionByZero();
  MPoly<K> q(a.arity());
  const auto& [lb, cb] = b.leading_term();
  const K inv = K(1) / cb;
  while (!a.is_zero()) {
    const auto [la, ca] = a.leading_term();
    Exponents e;
    for (int i = 0; i < kMaxArity; ++i) {
      e[i] = la[i] - lb[i];
      if (e[i] < 0) throw InexactDivision("multivariate division left a remainder");
    }
    K f = ca * inv;
    q.add_term(e, f);
    a -= MPoly<K>::monomial(a.arity(), e, f) * b;
  }
  return q;
}

/// Quotient if b divides a exactly, nothing otherwise.
template <class K>
std::optional<MPoly<K>> try_divide(const MPoly<K>& a, const MPoly<K>& b) {
  try {
    return exact_div(a, b);
  } catch (const InexactDivision&) {
    return std::nullopt;
  }
}

template <class K2, class K, class Fn>
MPoly<K2> map_coeffs(const MPoly<K>& p, Fn fn) {
  MPoly<K2> r(p.arity());
  for (const auto& [e, c] : p.terms()) r.add_term(e, fn(c));
  return r;
}

/// Euler identity check helper: sum_i x_i * d p / d x_i.
template <class K>
MPoly<K> euler_operator(const MPoly<K>& p) {
  MPoly<K> r(p.arity());
  for (int i = 0; i < p.arity(); ++i) r += MPoly<K>::variable(p.arity(), i) * p.partial(i);
  return r;
}

}  // namespace octic
