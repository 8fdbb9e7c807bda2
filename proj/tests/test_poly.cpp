#include <gtest/gtest.h>

#include "smalldev/certificates.hpp"
#include "smalldev/poly.hpp"
#include "support.hpp"

using namespace smalldev;
using smalldev::testing::Gen;

namespace {

RationalPoly P(std::initializer_list<Rational> c) { return RationalPoly(std::vector<Rational>(c)); }

/// Sign of p sampled densely on [lo, hi]: max value.
Rational sampled_max(const RationalPoly& p, const Rational& lo, const Rational& hi, int samples = 1000) {
  Rational best = p(lo);
  for (int i = 1; i <= samples; ++i) {
    Rational v = p(lo + (hi - lo) * Rational(i, samples));
    if (v > best) best = v;
  }
  return best;
}

}  // namespace

TEST(Polynomial, NormalizationAndDegree) {
  RationalPoly z{Rational(0), Rational(0)};
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), -1);
  EXPECT_EQ(P({1, 2, 0, 0}).degree(), 1);
  EXPECT_EQ(P({1, 2}) * P({1, -2}), P({1, 0, -4}));
}

TEST(Polynomial, Eval) {
  EXPECT_EQ(eval(RationalPoly::monomial(Rational(1), 2), Rational(3)), Rational(9));
  auto q = build_q(Rational(1), Rational(1)).q;
  EXPECT_EQ(eval(q, Rational(-1)), Rational(0));
  // f(x) = ((m + n) x - x^2) / (mn) with n = 9, m = 5
  RationalPoly f = Rational(1, 45) * P({0, 14, -1});
  EXPECT_EQ(f(Rational(9)), Rational(1));
  EXPECT_EQ(f(Rational(5)), Rational(1));
  EXPECT_EQ(f(Rational(0)), Rational(0));
}

TEST(Polynomial, Shift) {
  EXPECT_EQ(shift(RationalPoly::x(), Rational(0)), RationalPoly::x());
  EXPECT_EQ(shift(RationalPoly::monomial(Rational(1), 2), Rational(1)), P({1, -2, 1}));
  auto q = build_q(Rational(1), Rational(1)).q;
  EXPECT_EQ(shift(q, Rational(4, 25))(Rational(4, 25)), Rational(1));
}

TEST(Polynomial, ShiftInverseProperty) {
  Gen g;
  for (int i = 0; i < 200; ++i) {
    RationalPoly p = g.poly(static_cast<int>(g.integer(0, 6)));
    Rational d = g.any_rational();
    EXPECT_EQ(shift(shift(p, d), -d), p);
    Rational x = g.any_rational();
    EXPECT_EQ(shift(p, d)(x), p(x - d));
  }
}

TEST(Polynomial, ShiftOverQuadExt) {
  QuadPoly p{QuadExt(1), QuadExt(0, 1), QuadExt(2)};
  QuadExt d(Rational(1, 3), Rational(-1));
  QuadExt x(Rational(5), Rational(1, 2));
  EXPECT_EQ(shift(p, d)(x), p(x - d));
}

TEST(Polynomial, DivmodAndGcd) {
  Gen g(3);
  for (int i = 0; i < 100; ++i) {
    RationalPoly a = g.poly(5), b = g.poly(2);
    auto [q, r] = a.divmod(b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
  }
  RationalPoly a = P({-1, 1}) * P({-1, 1}) * P({2, 1});
  EXPECT_EQ(gcd(a, a.derivative()), P({-1, 1}));
  EXPECT_EQ(squarefree_part(a), monic(P({-1, 1}) * P({2, 1})));
}

TEST(Polynomial, ScaleVariable) {
  RationalPoly p = P({1, 2, 3});
  EXPECT_EQ(p.scale_variable(Rational(2)), P({1, 4, 12}));
}

TEST(Sturm, CountsDistinctRootsAgainstConstruction) {
  Gen g(5);
  for (int i = 0; i < 150; ++i) {
    std::vector<Rational> roots;
    RationalPoly p = g.rooted_poly(static_cast<int>(g.integer(1, 5)), 4, roots);
    Rational a = g.rational(-5, 5, 3), b = g.rational(-5, 5, 3);
    if (b < a) std::swap(a, b);
    int expected = 0;
    for (const auto& r : roots) expected += (a < r && r <= b) ? 1 : 0;
    EXPECT_EQ(count_roots(p, a, b), expected);
    // Repeated roots are counted once.
    EXPECT_EQ(count_roots(p * p, a, b), expected);
  }
}

TEST(Sturm, RootCountMatchesGridSignChanges) {
  Gen g(17);
  for (int i = 0; i < 60; ++i) {
    std::vector<Rational> roots;
    RationalPoly p = g.rooted_poly(static_cast<int>(g.integer(1, 4)), 2, roots);  // roots on a 1/2 grid
    // A 1/8 grid offset by 1/16 never hits a root and separates them.
    int changes = 0;
    Rational prev = p(Rational(-81, 16));
    for (int k = -80; k <= 80; ++k) {
      Rational v = p(Rational(2 * k + 1, 16));
      if (v.sign() != prev.sign()) ++changes;
      prev = v;
    }
    EXPECT_EQ(count_roots(p, Rational(-81, 16), Rational(161, 16)), changes);
  }
}

TEST(Sturm, SignExamples) {
  auto c = sturm_sign_on_interval(P({0, 0, -1}), Rational(-1), Rational(1));
  EXPECT_TRUE(c.certified);
  EXPECT_TRUE(replay(c));

  // (1016 - 29 s^2 + 4 s^3 + 3 s^4)/1250 - 5/6 on [0, 5/2]
  RationalPoly lemma4 = Rational(1, 1250) * P({1016, 0, -29, 4, 3}) - RationalPoly::constant(Rational(5, 6));
  auto c4 = sturm_sign_on_interval(lemma4, Rational(0), Rational(5, 2));
  EXPECT_TRUE(c4.certified);
  EXPECT_TRUE(replay(c4));

  RationalPoly lemma3 = P({Rational(62573, 78125), 0, Rational(-59, 3375), 0, Rational(5, 9)}) -
                        RationalPoly::constant(Rational(5, 6));
  auto c3 = sturm_sign_on_interval(lemma3, Rational(0), Rational(1, 2));
  EXPECT_TRUE(c3.certified);
  EXPECT_TRUE(replay(c3));
}

TEST(Sturm, RefutesFalseClaimsWithWitness) {
  auto c = sturm_sign_on_interval(P({-1, 0, 1}), Rational(-2), Rational(2));  // x^2 - 1 <= 0 fails at +-2
  EXPECT_FALSE(c.certified);
  ASSERT_TRUE(c.witness_point);
  EXPECT_GT(P({-1, 0, 1})(*c.witness_point).sign(), 0);

  // Positive bump strictly inside with negative endpoints: -(x^2) + 1/100 on [-1, 1].
  auto bump = sturm_sign_on_interval(P({Rational(1, 100), 0, -1}), Rational(-1), Rational(1));
  EXPECT_FALSE(bump.certified);
  ASSERT_TRUE(bump.witness_point);
  EXPECT_GT(P({Rational(1, 100), 0, -1})(*bump.witness_point).sign(), 0);
  EXPECT_FALSE(replay(bump));
}

TEST(Sturm, TouchingRootIsCertified) {
  // -(x - 1/3)^2 <= 0 touches zero inside the interval.
  RationalPoly p = -(P({Rational(-1, 3), 1}) * P({Rational(-1, 3), 1}));
  auto c = sturm_sign_on_interval(p, Rational(0), Rational(1));
  EXPECT_TRUE(c.certified);
  EXPECT_TRUE(replay(c));
  auto at_end = sturm_sign_on_interval(p, Rational(1, 3), Rational(1));
  EXPECT_TRUE(at_end.certified);
}

TEST(Sturm, AgreesWithDenseSampling) {
  Gen g(23);
  int certified = 0, refuted = 0;
  for (int i = 0; i < 120; ++i) {
    RationalPoly p = g.poly(static_cast<int>(g.integer(3, 4)));
    Rational lo = g.rational(-2, 1, 4), hi = lo + g.positive(2, 4);
    auto c = sturm_sign_on_interval(p, lo, hi);
    Rational mx = sampled_max(p, lo, hi);
    if (c.certified) {
      ++certified;
      EXPECT_LE(mx.sign(), 0) << "certified but a sample is positive";
      EXPECT_TRUE(replay(c));
    } else {
      ++refuted;
      ASSERT_TRUE(c.witness_point);
      EXPECT_GT(p(*c.witness_point).sign(), 0);
    }
  }
  EXPECT_GT(certified, 0);
  EXPECT_GT(refuted, 0);
}

TEST(Sturm, NonNegativeClaimAndBound) {
  auto c = sturm_sign_on_interval(P({0, 0, 1}), Rational(-3), Rational(3), SignClaim::NonNegative);
  EXPECT_TRUE(c.certified);
  auto b = sturm_sign_on_interval(P({0, 0, 1}), Rational(-3), Rational(3), SignClaim::NonPositive, Rational(9));
  EXPECT_TRUE(b.certified);
  auto nb = sturm_sign_on_interval(P({0, 0, 1}), Rational(-3), Rational(3), SignClaim::NonPositive, Rational(8));
  EXPECT_FALSE(nb.certified);
  EXPECT_THROW(sturm_sign_on_interval(P({1}), Rational(1), Rational(0)), std::invalid_argument);
}

TEST(Convexity, Examples) {
  RationalPoly b2 = P({Rational(27, 32), Rational(-1, 16), Rational(19, 288), Rational(1, 864), Rational(1, 2592)});
  auto c = convex_endpoint_bound(b2, Rational(1, 3), Rational(2, 3), Rational(5, 6));
  EXPECT_TRUE(c.certified);
  EXPECT_EQ(c.convexity_basis, "nonnegative-coefficients");
  EXPECT_TRUE(replay(c));

  EXPECT_TRUE(convex_endpoint_bound(RationalPoly{}, Rational(0), Rational(5), Rational(0)).certified);

  // B_{9/4} in u on [2/3, 1]
  RationalPoly b94 = P({Rational(1883, 2187), Rational(-49, 729), Rational(80, 2187), Rational(16, 19683),
                        Rational(128, 531441)});
  EXPECT_TRUE(convex_endpoint_bound(b94, Rational(2, 3), Rational(1), Rational(5, 6)).certified);
}

TEST(Convexity, SecondDerivativeFallback) {
  // x^4 - x^2 has a negative u^2 coefficient but is convex on [1, 2].
  RationalPoly p = P({0, 0, -1, 0, 1});
  auto c = convex_endpoint_bound(p, Rational(1), Rational(2), Rational(12));
  EXPECT_TRUE(c.certified);
  EXPECT_EQ(c.convexity_basis, "sturm-second-derivative");
  EXPECT_TRUE(replay(c));
  // Not convex on [0, 1/2]: the certificate refuses even though the claim is true.
  auto nc = convex_endpoint_bound(p, Rational(0), Rational(1, 2), Rational(1));
  EXPECT_FALSE(nc.certified);
  EXPECT_TRUE(sturm_sign_on_interval(p, Rational(0), Rational(1, 2), SignClaim::NonPositive, Rational(1)).certified);
}

TEST(Convexity, NeverCertifiesWhatSturmRefutes) {
  Gen g(29);
  for (int i = 0; i < 150; ++i) {
    RationalPoly p = g.poly(4);
    Rational lo = g.rational(0, 2, 4), hi = lo + g.positive(1, 4);
    Rational bound = g.any_rational();
    auto cv = convex_endpoint_bound(p, lo, hi, bound);
    auto st = sturm_sign_on_interval(p, lo, hi, SignClaim::NonPositive, bound);
    if (cv.certified) EXPECT_TRUE(st.certified) << "convexity certified a claim Sturm refutes";
  }
}

TEST(Replay, DetectsTampering) {
  RationalPoly p = P({-1, 0, -1});
  auto c = sturm_sign_on_interval(p, Rational(-1), Rational(1));
  ASSERT_TRUE(c.certified);
  auto bad = c;
  bad.poly = P({1, 0, -1});
  EXPECT_FALSE(replay(bad));
  auto shrunk = c;
  shrunk.hi = Rational(2);
  EXPECT_FALSE(replay(shrunk));
}
