#include <random>

#include "doctest.h"
#include "octic/algebraic.hpp"
#include "octic/qsqrt2.hpp"
#include "octic/roots.hpp"
#include "octic/tower.hpp"

using namespace octic;

namespace {

const QSqrt2 kSqrt2 = QSqrt2::sqrt2();

QSqrt2 q(long a, long b) { return QSqrt2(Rat(a), Rat(b)); }

TowerElem s3_root() { return adjoin_sqrt(TowerElem(q(-2, 2))); }

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rat("6/4") == Rat(3, 2));
  CHECK(format_rat(Rat(5)) == "5/1");
  CHECK(format_rat(parse_rat("-0/7")) == "0/1");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
}

TEST_CASE("field arithmetic in Q(sqrt2)") {
  CHECK(q(1, 1) * q(1, -1) == QSqrt2(-1));
  CHECK(q(3, 2) / q(1, 1) == q(1, 1));
  CHECK_THROWS_AS(q(1, 1) / QSqrt2(0), DivisionByZero);
}

TEST_CASE("tower defining relation") {
  TowerElem x = s3_root();
  CHECK(x.depth() == 1);
  TowerElem sq = x * x;
  CHECK(sq.in_base());
  CHECK(sq.base_value() == q(-2, 2));
}

TEST_CASE("compare") {
  CHECK(compare(TowerElem(kSqrt2), TowerElem(Rat(7, 5))) == Ordering::greater);
  CHECK(compare(TowerElem(q(3, 2)), TowerElem(q(1, 1) * q(1, 1))) == Ordering::equal);
  CHECK(compare(TowerElem(q(-1, 1)), TowerElem(q(2, -1))) == Ordering::less);
}

TEST_CASE("is_square") {
  CHECK(sqrt_in_field(q(3, 2)) == q(1, 1));
  CHECK_FALSE(sqrt_in_field(QSqrt2(2)).has_value() == false);  // 2 is a square in Q(sqrt2)
  CHECK_FALSE(rat_sqrt(Rat(2)).has_value());
  CHECK_FALSE(sqrt_in_field(q(-2, 2)).has_value());
  // norm of 2 sqrt2 - 2 is (-2)^2 - 2 * 2^2 = -4, not a rational square
  CHECK(q(-2, 2).norm() == Rat(-4));
}

TEST_CASE("tower construction rejects squares and negatives") {
  CHECK_THROWS_AS(Tower::extend(nullptr, TowerElem(q(3, 2))), MathError);
  CHECK_THROWS_AS(Tower::extend(nullptr, TowerElem(-3)), MathError);
  TowerElem x = s3_root();
  CHECK_THROWS_AS(Tower::extend(x.tower(), TowerElem(q(-2, 2))), MathError);
}

TEST_CASE("to_interval") {
  Interval i = to_interval(TowerElem(kSqrt2), Rat(1, 100));
  CHECK(i.lo >= Rat(141, 100));
  CHECK(i.hi <= Rat(142, 100));
  Interval j = to_interval(TowerElem(q(-1, 1)), Rat(1, 10));
  CHECK(j.contains(Rat(414, 1000)) == (j.lo <= Rat(414, 1000)));
  CHECK(j.width() <= Rat(1, 10));
  Interval k = to_interval(s3_root(), Rat(1, 100));
  CHECK(k.lo >= Rat(90, 100));
  CHECK(k.hi <= Rat(92, 100));
  Interval k2 = to_interval(s3_root(), Rat(1, 200));
  CHECK(k2.lo >= k.lo);
  CHECK(k2.hi <= k.hi);
}

TEST_CASE("real root isolation") {
  UPoly<Rat> p(std::vector<Rat>{Rat(-2), Rat(0), Rat(1)});
  auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].hi < 0);
  CHECK(roots[1].lo > 0);
  CHECK(roots[0].multiplicity == 1);
  // (x - 1)^2 (x + 2)
  UPoly<Rat> lin1(std::vector<Rat>{Rat(-1), Rat(1)}), lin2(std::vector<Rat>{Rat(2), Rat(1)});
  auto r2 = isolate_real_roots(lin1 * lin1 * lin2);
  REQUIRE(r2.size() == 2);
  CHECK(r2[0].contains_value(Rat(-2)));
  CHECK(r2[0].multiplicity == 1);
  CHECK(r2[1].contains_value(Rat(1)));
  CHECK(r2[1].multiplicity == 2);
  CHECK_THROWS_AS(isolate_real_roots(UPoly<Rat>()), MathError);
}

TEST_CASE("identify roots over Q(sqrt2)") {
  // (x - sqrt2)(x - 1/3)(x^2 - (2 sqrt2 - 2))(x^2 + 1)
  UPoly<QSqrt2> p = UPoly<QSqrt2>(std::vector<QSqrt2>{-kSqrt2, QSqrt2(1)}) *
                    UPoly<QSqrt2>(std::vector<QSqrt2>{QSqrt2(Rat(-1, 3)), QSqrt2(1)}) *
                    UPoly<QSqrt2>(std::vector<QSqrt2>{-q(-2, 2), QSqrt2(0), QSqrt2(1)}) *
                    UPoly<QSqrt2>(std::vector<QSqrt2>{QSqrt2(1), QSqrt2(0), QSqrt2(1)});
  auto id = identify_real_roots(p);
  CHECK(id.roots.size() == 4);
  CHECK(id.residual.degree() == 2);
  CHECK(id.identified.degree() == 4);
}

TEST_CASE("minimal polynomial") {
  auto m = minimal_polynomial(s3_root());
  CHECK(m.degree() == 2);
  CHECK(m.coeff(0) == q(2, -2));
}

TEST_CASE("equality across towers whose radicands differ by a square factor") {
  TowerElem a = adjoin_sqrt(TowerElem(Rat(3, 5)));
  TowerElem b = adjoin_sqrt(TowerElem(Rat(6, 5)));
  CHECK(equal_across(TowerElem(kSqrt2) * a, b));
  CHECK_FALSE(equal_across(a, b));
}
