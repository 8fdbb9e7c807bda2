#pragma once

#include <stdexcept>
#include <string>

#include "smalldev/exactnum.hpp"

namespace smalldev {

/// Hypotheses on (E[X^3], E[X^4]) for a mean-zero X with E[X^2] = sigma^2.
///  BoundedUnit      E[X^3] >= -sigma^2, E[X^4] <= 3 sigma^4 + sigma^2
///  NonnegThird      E[X^3] >= 0,        E[X^4] <= 3 sigma^4 + sigma^2
///  NegThirdTwoPoint E[X^3] >= -sigma^2, E[X^4] <= 3 sigma^4 + 4 sigma^3 + sigma^2
///  Kurtosis(c)      E[X^3] >= 0,        E[X^4] <= c sigma^4
enum class RegimeKind { BoundedUnit, NonnegThird, NegThirdTwoPoint, Kurtosis };

struct MomentRegime {
  RegimeKind kind = RegimeKind::BoundedUnit;
  Rational c{3};  // only meaningful for Kurtosis

  static MomentRegime bounded_unit() { return {RegimeKind::BoundedUnit, Rational(3)}; }
  static MomentRegime nonneg_third() { return {RegimeKind::NonnegThird, Rational(3)}; }
  static MomentRegime neg_third_two_point() { return {RegimeKind::NegThirdTwoPoint, Rational(3)}; }
  static MomentRegime kurtosis(const Rational& c) {
    if (c < Rational(1)) throw std::invalid_argument("Kurtosis regime requires c >= 1");
    return {RegimeKind::Kurtosis, c};
  }

  /// E[X^3] worst case enters the bound; otherwise the term is dropped.
  [[nodiscard]] bool third_moment_floor_is_negative() const {
    return kind == RegimeKind::BoundedUnit || kind == RegimeKind::NegThirdTwoPoint;
  }
  /// The fourth-moment allowance involves sigma^3, so sigma itself is needed.
  [[nodiscard]] bool needs_sigma_cubed() const { return kind == RegimeKind::NegThirdTwoPoint; }

  [[nodiscard]] std::string name() const {
    switch (kind) {
      case RegimeKind::BoundedUnit: return "BoundedUnit";
      case RegimeKind::NonnegThird: return "NonnegThird";
      case RegimeKind::NegThirdTwoPoint: return "NegThirdTwoPoint";
      case RegimeKind::Kurtosis: return "Kurtosis(" + c.str() + ")";
    }
    return "?";
  }

  friend bool operator==(const MomentRegime& a, const MomentRegime& b) {
    return a.kind == b.kind && (a.kind != RegimeKind::Kurtosis || a.c == b.c);
  }
};

}  // namespace smalldev
