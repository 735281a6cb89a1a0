#include "octic/tower.hpp"

#include <cmath>
#include <sstream>

#include "octic/error.hpp"

namespace octic {

namespace {

using Vec = std::vector<QSqrt2>;
using CSpan = std::span<const QSqrt2>;

bool all_zero(CSpan a) {
  for (const auto& c : a)
    if (!c.is_zero()) return false;
  return true;
}

Vec add(CSpan a, CSpan b) {
  Vec out(a.begin(), a.end());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Vec sub(CSpan a, CSpan b) {
  Vec out(a.begin(), a.end());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Vec neg(CSpan a) {
  Vec out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(-c);
  return out;
}

Vec concat(const Vec& lo, const Vec& hi) {
  Vec out = lo;
  out.insert(out.end(), hi.begin(), hi.end());
  return out;
}

Vec mul_rec(const Tower* t, CSpan a, CSpan b) {
  if (!t) return {a[0] * b[0]};
  const std::size_t h = a.size() / 2;
  const Tower* p = t->parent().get();
  CSpan au = a.first(h), av = a.subspan(h), bu = b.first(h), bv = b.subspan(h);
  const bool av0 = all_zero(av), bv0 = all_zero(bv);
  Vec u = mul_rec(p, au, bu);
  Vec v(h);
  if (!av0 && !bv0) {
    Vec vv = mul_rec(p, av, bv);
    u = add(u, mul_rec(p, vv, t->radicand_coeffs()));
  }
  if (!bv0) v = mul_rec(p, au, bv);
  if (!av0) v = add(v, mul_rec(p, av, bu));
  return concat(u, v);
}

Vec inv_rec(const Tower* t, CSpan a) {
  if (!t) {
    if (a[0].is_zero()) throw DivisionByZero();
    return {a[0].inverse()};
  }
  const std::size_t h = a.size() / 2;
  const Tower* p = t->parent().get();
  CSpan u = a.first(h), v = a.subspan(h);
  // (u + v s)^-1 = (u - v s) / (u^2 - v^2 r)
  Vec den = sub(mul_rec(p, u, u), mul_rec(p, mul_rec(p, v, v), t->radicand_coeffs()));
  Vec inv = inv_rec(p, den);
  return concat(mul_rec(p, u, inv), neg(mul_rec(p, v, inv)));
}

int sign_rec(const Tower* t, CSpan a) {
  if (!t) return a[0].sign();
  const std::size_t h = a.size() / 2;
  const Tower* p = t->parent().get();
  CSpan u = a.first(h), v = a.subspan(h);
  int su = sign_rec(p, u);
  int sv = sign_rec(p, v);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  Vec d = sub(mul_rec(p, u, u), mul_rec(p, mul_rec(p, v, v), t->radicand_coeffs()));
  return su * sign_rec(p, d);
}

double to_double_rec(const Tower* t, CSpan a) {
  if (!t) return a[0].to_double();
  const std::size_t h = a.size() / 2;
  const Tower* p = t->parent().get();
  double r = to_double_rec(p, t->radicand_coeffs());
  return to_double_rec(p, a.first(h)) + to_double_rec(p, a.subspan(h)) * std::sqrt(r);
}

std::optional<Vec> sqrt_rec(const Tower* t, CSpan a) {
  if (!t) {
    auto r = sqrt_in_field(a[0]);
    if (!r) return std::nullopt;
    return Vec{*r};
  }
  const std::size_t h = a.size() / 2;
  const Tower* p = t->parent().get();
  CSpan u = a.first(h), v = a.subspan(h);
  const Vec& r = t->radicand_coeffs();
  if (all_zero(v)) {
    if (auto s = sqrt_rec(p, u)) return concat(*s, Vec(h));
    // u = c^2 r gives the root c sqrt(r)
    Vec ur = mul_rec(p, u, inv_rec(p, r));
    if (auto c = sqrt_rec(p, ur)) return concat(Vec(h), *c);
    return std::nullopt;
  }
  Vec norm = sub(mul_rec(p, u, u), mul_rec(p, mul_rec(p, v, v), r));
  auto n = sqrt_rec(p, norm);
  if (!n) return std::nullopt;
  for (const Vec& s : {*n, neg(*n)}) {
    Vec half = add(u, s);
    for (auto& c : half) c /= QSqrt2(2);
    auto pr = sqrt_rec(p, half);
    if (!pr || all_zero(*pr)) continue;
    Vec two_p = *pr;
    for (auto& c : two_p) c *= QSqrt2(2);
    Vec q = mul_rec(p, v, inv_rec(p, two_p));
    Vec y = concat(*pr, q);
    if (mul_rec(t, y, y) == Vec(a.begin(), a.end())) return y;
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Tower

Tower::Tower(TowerPtr parent, TowerElem radicand)
    : parent_(std::move(parent)),
      radicand_(std::move(radicand)),
      radicand_coeffs_(radicand_.coeffs_in(parent_)),
      depth_(tower_depth(parent_) + 1) {}

TowerPtr Tower::extend(const TowerPtr& parent, const TowerElem& radicand) {
  if (!is_prefix(radicand.tower(), parent))
    throw FieldMismatch("radicand does not lie in the parent field");
  if (radicand.sign() <= 0) throw MathError("tower radicand must be positive");
  if (sqrt_in(parent, radicand)) throw MathError("tower radicand is a square in the parent field");
  return TowerPtr(new Tower(parent, radicand));
}

std::vector<TowerElem> Tower::radicands() const {
  std::vector<TowerElem> out;
  if (parent_) out = parent_->radicands();
  out.push_back(radicand_);
  return out;
}

int tower_depth(const TowerPtr& t) { return t ? t->depth() : 0; }

bool same_tower(const TowerPtr& a, const TowerPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->depth() != b->depth()) return false;
  return same_tower(a->parent(), b->parent()) && a->radicand_coeffs() == b->radicand_coeffs();
}

bool is_prefix(const TowerPtr& a, const TowerPtr& b) {
  int da = tower_depth(a);
  TowerPtr cur = b;
  if (tower_depth(cur) < da) return false;
  while (tower_depth(cur) > da) cur = cur->parent();
  return same_tower(a, cur);
}

TowerPtr common_tower(const TowerPtr& a, const TowerPtr& b) {
  if (a.get() == b.get()) return a;
  if (tower_depth(a) <= tower_depth(b)) {
    if (is_prefix(a, b)) return b;
  } else if (is_prefix(b, a)) {
    return a;
  }
  throw FieldMismatch("elements belong to towers with no canonical embedding");
}

// ---------------------------------------------------------------------------
// TowerElem

TowerElem TowerElem::from_coeffs(TowerPtr tower, std::vector<QSqrt2> coeffs) {
  if (coeffs.size() != (std::size_t{1} << tower_depth(tower)))
    throw MathError("coefficient vector does not match tower degree");
  TowerElem e;
  e.tower_ = std::move(tower);
  e.c_ = std::move(coeffs);
  e.normalize();
  return e;
}

TowerElem TowerElem::top_root(const TowerPtr& tower) {
  if (!tower) throw MathError("base field has no adjoined root");
  Vec c(std::size_t{1} << tower->depth());
  c[c.size() / 2] = QSqrt2(1);
  return from_coeffs(tower, std::move(c));
}

void TowerElem::normalize() {
  while (tower_) {
    const std::size_t h = c_.size() / 2;
    if (!all_zero(CSpan(c_).subspan(h))) break;
    c_.resize(h);
    tower_ = tower_->parent();
  }
}

int TowerElem::depth() const { return tower_depth(tower_); }

bool TowerElem::is_zero() const { return !tower_ && c_[0].is_zero(); }

const QSqrt2& TowerElem::base_value() const {
  if (tower_) throw MathError("element does not lie in Q(sqrt2)");
  return c_[0];
}

std::vector<QSqrt2> TowerElem::coeffs_in(const TowerPtr& target) const {
  if (!is_prefix(tower_, target)) throw FieldMismatch("target tower does not extend element's tower");
  Vec out = c_;
  out.resize(std::size_t{1} << tower_depth(target));
  return out;
}

int TowerElem::sign() const { return sign_rec(tower_.get(), c_); }

double TowerElem::to_double() const { return to_double_rec(tower_.get(), c_); }

TowerElem TowerElem::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return from_coeffs(tower_, inv_rec(tower_.get(), c_));
}

TowerElem& TowerElem::operator+=(const TowerElem& o) {
  TowerPtr t = common_tower(tower_, o.tower_);
  *this = from_coeffs(t, add(coeffs_in(t), o.coeffs_in(t)));
  return *this;
}

TowerElem& TowerElem::operator-=(const TowerElem& o) {
  TowerPtr t = common_tower(tower_, o.tower_);
  *this = from_coeffs(t, sub(coeffs_in(t), o.coeffs_in(t)));
  return *this;
}

TowerElem& TowerElem::operator*=(const TowerElem& o) {
  if (!tower_ && !o.tower_) {
    c_[0] *= o.c_[0];
    return *this;
  }
  TowerPtr t = common_tower(tower_, o.tower_);
  *this = from_coeffs(t, mul_rec(t.get(), coeffs_in(t), o.coeffs_in(t)));
  return *this;
}

TowerElem& TowerElem::operator/=(const TowerElem& o) {
  if (o.is_zero()) throw DivisionByZero();
  if (!tower_ && !o.tower_) {
    c_[0] /= o.c_[0];
    return *this;
  }
  return *this *= o.inverse();
}

TowerElem TowerElem::operator-() const {
  TowerElem e = *this;
  for (auto& c : e.c_) c = -c;
  return e;
}

bool operator==(const TowerElem& x, const TowerElem& y) {
  if (!x.tower_ && !y.tower_) return x.c_[0] == y.c_[0];
  TowerPtr t = common_tower(x.tower_, y.tower_);
  return x.coeffs_in(t) == y.coeffs_in(t);
}

std::string TowerElem::to_string() const {
  if (!tower_) return c_[0].to_string();
  std::ostringstream os;
  const int k = depth();
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].to_string() << ")";
    for (int j = 0; j < k; ++j)
      if (i & (std::size_t{1} << j)) os << "*s" << (j + 1);
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// ordering, intervals, square roots

Ordering compare(const TowerElem& x, const TowerElem& y) {
  int s = (x - y).sign();
  return s < 0 ? Ordering::less : (s > 0 ? Ordering::greater : Ordering::equal);
}

Interval to_interval(const TowerElem& x, const Rat& width) {
  if (sgn(width) <= 0) throw MathError("interval width must be positive");
  if (x.in_base() && x.base_value().is_rational()) return {x.base_value().a(), x.base_value().a()};
  auto sign_at = [&](const Rat& m) { return (x - TowerElem(m)).sign(); };
  double approx = x.to_double();
  Integer n = std::isfinite(approx) ? Integer(std::floor(approx)) : Integer(0);
  while (sign_at(Rat(n)) < 0) n -= 1;
  while (sign_at(Rat(n + 1)) >= 0) n += 1;
  Rat lo(n), hi(n + 1);
  if (sign_at(lo) == 0) return {lo, lo};
  // A quarter of the requested width keeps the enclosure well inside any
  // decimal window of that width around x.
  const Rat target = width / 4;
  while (hi - lo > target) {
    Rat mid = (lo + hi) / 2;
    int s = sign_at(mid);
    if (s == 0) return {mid, mid};
    if (s > 0)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

std::optional<TowerElem> sqrt_in_field(const TowerElem& x) {
  auto r = sqrt_rec(x.tower().get(), x.coeffs());
  if (!r) return std::nullopt;
  TowerElem y = TowerElem::from_coeffs(x.tower(), std::move(*r));
  return y.sign() < 0 ? -y : y;
}

TowerElem adjoin_sqrt(const TowerElem& x) {
  if (x.sign() < 0) throw MathError("negative radicand has no real square root");
  if (auto y = sqrt_in_field(x)) return *y;
  return TowerElem::top_root(Tower::extend(x.tower(), x));
}

std::optional<TowerElem> sqrt_in(const TowerPtr& field, const TowerElem& x) {
  auto r = sqrt_rec(field.get(), x.coeffs_in(field));
  if (!r) return std::nullopt;
  TowerElem y = TowerElem::from_coeffs(field, std::move(*r));
  return y.sign() < 0 ? -y : y;
}

TowerElem adjoin_sqrt_over(const TowerPtr& field, const TowerElem& x) {
  if (x.sign() < 0) throw MathError("negative radicand has no real square root");
  if (auto y = sqrt_in(field, x)) return *y;
  return TowerElem::top_root(Tower::extend(field, x));
}

TowerElem embed(const TowerElem& x, std::span<const TowerElem> root_images) {
  const int k = x.depth();
  TowerElem out;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    if (x.coeffs()[i].is_zero()) continue;
    TowerElem term(x.coeffs()[i]);
    for (int j = 0; j < k; ++j)
      if (i & (std::size_t{1} << j)) term *= root_images[j];
    out += term;
  }
  return out;
}

TowerJoin join_towers(const TowerPtr& left, const TowerPtr& right) {
  TowerJoin j;
  j.tower = left;
  std::vector<TowerPtr> right_levels;
  for (TowerPtr t = right; t; t = t->parent()) right_levels.insert(right_levels.begin(), t);
  for (const auto& level : right_levels) {
    TowerElem image = embed(level->radicand(), j.right_roots);
    if (auto s = sqrt_in(j.tower, image)) {
      j.right_roots.push_back(*s);
    } else {
      j.tower = Tower::extend(j.tower, image);
      j.right_roots.push_back(TowerElem::top_root(j.tower));
    }
  }
  std::vector<TowerPtr> left_levels;
  for (TowerPtr t = left; t; t = t->parent()) left_levels.insert(left_levels.begin(), t);
  for (const auto& level : left_levels) j.left_roots.push_back(TowerElem::top_root(level));
  return j;
}

bool equal_across(const TowerElem& x, const TowerElem& y) {
  if (is_prefix(x.tower(), y.tower()) || is_prefix(y.tower(), x.tower())) return x == y;
  TowerJoin j = join_towers(x.tower(), y.tower());
  return embed(x, j.left_roots) == embed(y, j.right_roots);
}

}  // namespace octic
