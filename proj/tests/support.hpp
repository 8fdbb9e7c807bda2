#pragma once
// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "smalldev/distributions.hpp"
#include "smalldev/exactnum.hpp"
#include "smalldev/poly.hpp"

namespace smalldev::testing {

inline constexpr std::uint64_t kSeed = 20240601;

class Gen {
 public:
  explicit Gen(std::uint64_t seed = kSeed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  /// Uniform over {k / den : lo*den <= k <= hi*den}.
  Rational rational(long lo, long hi, long den = 12) {
    return Rational(integer(lo * den, hi * den), den);
  }

  /// Random p/q with |p| <= 50, 1 <= q <= 20.
  Rational any_rational() { return Rational(integer(-50, 50), integer(1, 20)); }

  Rational positive(long hi, long den) { return Rational(integer(1, hi * den), den); }

  RationalPoly poly(int degree) {
    std::vector<Rational> c;
    for (int i = 0; i <= degree; ++i) c.push_back(any_rational());
    if (c.back().is_zero()) c.back() = Rational(1);
    return RationalPoly(c);
  }

  /// Product of (x - r_i) with distinct roots drawn from a grid of step 1/den.
  RationalPoly rooted_poly(int degree, long den, std::vector<Rational>& roots) {
    RationalPoly p{Rational(1)};
    roots.clear();
    while (static_cast<int>(roots.size()) < degree) {
      Rational r(integer(-4 * den, 4 * den), den);
      bool dup = false;
      for (const auto& q : roots) dup = dup || q == r;
      if (dup) continue;
      roots.push_back(r);
      p = p * RationalPoly{-r, Rational(1)};
    }
    return p;
  }

  CenteredTwoPoint centered(long den = 4) {
    return CenteredTwoPoint::make(Rational(integer(1, den), den), Rational(integer(1, 2 * den), den));
  }

  NonnegTwoPoint nonneg() {
    Rational mu(integer(1, 4), 4);
    Rational c = mu + Rational(integer(0, 16), 4);
    return NonnegTwoPoint::make(c, mu);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace smalldev::testing
