#include <gtest/gtest.h>

#include <cmath>

#include "smalldev/exactnum.hpp"
#include "support.hpp"

using namespace smalldev;
using smalldev::testing::Gen;

TEST(Rational, CanonicalForm) {
  Rational a(6, -8);
  EXPECT_EQ(a.str(), "-3/4");
  EXPECT_EQ(Rational(10, 5), Rational(2));
  EXPECT_TRUE(Rational(10, 5).is_integer());
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::parse(" -7 "), Rational(-7));
  EXPECT_EQ(Rational::parse("0.68"), Rational(17, 25));
  EXPECT_EQ(Rational::parse("-1.25e-3"), Rational(-1, 800));
  EXPECT_EQ(Rational::parse("2E2"), Rational(200));
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, Arithmetic) {
  Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_THROW(a / Rational(0), std::domain_error);
  EXPECT_EQ(Rational(2, 3).pow(3), Rational(8, 27));
  EXPECT_EQ(Rational(2, 3).pow(-2), Rational(9, 4));
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(7, 2).ceil(), 4);
  EXPECT_EQ(Rational(9, 2).ceil(), 5);
  EXPECT_EQ(Rational(1, 3).decimal(12), "0.333333333333");
}

TEST(QuadExt, SignExamples) {
  EXPECT_EQ(quadext_sign(QuadExt(0, 0)), 0);
  EXPECT_EQ(quadext_sign(QuadExt(1, -1)), -1);
  EXPECT_EQ(quadext_sign(QuadExt(-5, 3)), 1);
  EXPECT_EQ(quadext_sign(QuadExt(5, -3)), -1);
  EXPECT_EQ(quadext_sign(QuadExt(2, 1)), 1);
  EXPECT_EQ(quadext_sign(QuadExt(-2, -1)), -1);
  EXPECT_EQ(quadext_sign(QuadExt(Rational(7, 4), Rational(-1))), 1);  // 7/4 > sqrt(3)
  EXPECT_EQ(quadext_sign(QuadExt(Rational(17, 10), Rational(-1))), -1);
}

TEST(QuadExt, SignAgreesWithDouble) {
  Gen g;
  for (int i = 0; i < 2000; ++i) {
    QuadExt x(g.any_rational(), g.any_rational());
    double v = x.rational_part().to_double() + x.sqrt3_part().to_double() * std::sqrt(3.0);
    if (std::abs(v) < 1e-9) continue;
    EXPECT_EQ(x.sign(), v > 0 ? 1 : -1) << x.str();
  }
}

TEST(QuadExt, FieldAxioms) {
  Gen g(7);
  for (int i = 0; i < 300; ++i) {
    QuadExt x(g.any_rational(), g.any_rational());
    QuadExt y(g.any_rational(), g.any_rational());
    QuadExt z(g.any_rational(), g.any_rational());
    EXPECT_EQ(x + y, y + x);
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x + QuadExt(0), x);
    EXPECT_EQ(x * QuadExt(1), x);
    EXPECT_EQ(x - x, QuadExt(0));
    if (x != QuadExt(0)) {
      EXPECT_EQ(x * (QuadExt(1) / x), QuadExt(1));
    }
    // (p + q sqrt3)(p - q sqrt3) = p^2 - 3 q^2
    EXPECT_EQ(x * x.conjugate(), QuadExt(x.norm()));
    EXPECT_EQ(x.norm(), x.rational_part() * x.rational_part() - Rational(3) * x.sqrt3_part() * x.sqrt3_part());
  }
}

TEST(QuadExt, OrderingAndPrinting) {
  EXPECT_EQ(QuadExt::sqrt3() * QuadExt::sqrt3(), QuadExt(3));
  EXPECT_LT(QuadExt(Rational(17, 10)), QuadExt::sqrt3());
  EXPECT_GT(QuadExt(Rational(7, 4)), QuadExt::sqrt3());
  EXPECT_EQ(QuadExt(2, -5).str(), "2-5*sqrt(3)");
  EXPECT_EQ(QuadExt(0, 1).str(), "sqrt(3)");
  EXPECT_EQ(QuadExt(Rational(1, 2), -1).str(), "1/2-sqrt(3)");
  EXPECT_THROW(QuadExt(1) / QuadExt(0), std::domain_error);
}

TEST(Interval, ArithmeticContainsSampledResults) {
  Gen g(11);
  for (int i = 0; i < 200; ++i) {
    Rational a = g.any_rational(), b = g.any_rational(), c = g.any_rational(), d = g.any_rational();
    RationalInterval x(std::min(a, b), std::max(a, b)), y(std::min(c, d), std::max(c, d));
    for (int s = 0; s <= 4; ++s) {
      Rational xs = x.lo() + x.width() * Rational(s, 4);
      Rational ys = y.lo() + y.width() * Rational(4 - s, 4);
      EXPECT_TRUE((x + y).contains(xs + ys));
      EXPECT_TRUE((x - y).contains(xs - ys));
      EXPECT_TRUE((x * y).contains(xs * ys));
      if (!y.contains_zero()) {
        EXPECT_TRUE((x / y).contains(xs / ys));
      }
    }
  }
  EXPECT_THROW(RationalInterval(1, 0), std::invalid_argument);
  EXPECT_THROW(RationalInterval(1) / RationalInterval(-1, 1), std::domain_error);
}

TEST(Interval, StrictlyGreater) {
  EXPECT_TRUE(interval_strictly_greater(RationalInterval(1, 1), Rational(0)));
  EXPECT_FALSE(interval_strictly_greater(RationalInterval(Rational(1, 10), Rational(2, 10)), Rational(15, 100)));
  EXPECT_FALSE(interval_strictly_greater(RationalInterval(Rational(1, 10), Rational(2, 10)), Rational(1, 10)));
}

TEST(ExpEnclosure, Examples) {
  EXPECT_EQ(exp_enclosure(Rational(0), 3), RationalInterval(1, 1));
  EXPECT_THROW(exp_enclosure(Rational(1, 2), 10), std::domain_error);
  EXPECT_THROW(exp_enclosure(Rational(-1), 0), std::invalid_argument);

  auto e1 = exp_enclosure(Rational(-1), 30);
  EXPECT_TRUE(e1.contains(Rational::parse("0.3678794411714423215955237701614608674")));
  EXPECT_LT(e1.width(), Rational::parse("1e-30"));

  int terms = 1;
  RationalInterval e;
  do {
    e = exp_enclosure(Rational(-4, 25), terms++);
  } while (e.width() > Rational::parse("1e-12"));
  EXPECT_GT(e.lo(), Rational::parse("0.8521437"));
  EXPECT_LT(e.hi(), Rational::parse("0.8521438"));
}

TEST(ExpEnclosure, MonotoneInTerms) {
  for (auto x : {Rational(-4, 25), Rational(-1), Rational(-7, 3), Rational(-12)}) {
    RationalInterval prev = exp_enclosure(x, 1);
    RationalInterval fine = exp_enclosure(x, 60);
    for (int t = 2; t <= 40; ++t) {
      RationalInterval cur = exp_enclosure(x, t);
      EXPECT_TRUE(prev.contains(cur)) << x.str() << " terms " << t;
      EXPECT_TRUE(cur.contains(fine.midpoint()));
      prev = cur;
    }
    double v = std::exp(x.to_double());
    EXPECT_NEAR(fine.midpoint().to_double(), v, 1e-15 * std::max(1.0, v));
  }
}

TEST(SqrtEnclosure, Brackets) {
  auto s = sqrt_enclosure(Rational(3), 30);
  EXPECT_LE(s.lo() * s.lo(), Rational(3));
  EXPECT_GE(s.hi() * s.hi(), Rational(3));
  EXPECT_LE(s.width(), Rational::parse("1e-30"));
  EXPECT_EQ(sqrt_enclosure(Rational(9, 4)), RationalInterval(Rational(3, 2), Rational(3, 2)));
  auto q = to_interval(QuadExt(Rational(-5), Rational(3)));
  EXPECT_TRUE(q.lo().sign() > 0);
  EXPECT_THROW(sqrt_enclosure(Rational(-1)), std::domain_error);
}
