#pragma once
// The quartic dual certificate Q_{l,r}: construction, symbolic proof that it
// dominates the indicator of [0, inf), the expectation expansion of
// Q(X - delta), worst-case bounds under each moment regime, and replayable
// case analyses covering every sigma >= 0.

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smalldev/distributions.hpp"
#include "smalldev/exactnum.hpp"
#include "smalldev/poly.hpp"
#include "smalldev/regime.hpp"

namespace smalldev {

/// Q_{l,r}: Q(-l) = Q'(-l) = 0, Q(0) = 1, Q(r) = 1, Q'(r) = 0.
template <class S>
struct CertificatePolynomial {
  S ell;
  S r;
  Polynomial<S> q;
  [[nodiscard]] S coeff(std::size_t i) const { return q.coeff(i); }
};

template <class S>
CertificatePolynomial<S> build_q(const S& ell, const S& r) {
  if (sign(ell) <= 0 || sign(r) <= 0) throw std::invalid_argument("build_q: need l > 0 and r > 0");
  S lr = ell + r;
  S lr3 = lr * lr * lr;
  S den = ell * ell * lr3;
  std::vector<S> c{
      S(1),
      S(2) * r * r * (S(2) * ell + r) / (ell * lr3),
      r * (S(-8) * ell * ell - ell * r + r * r) / den,
      (S(4) * ell * ell - S(4) * ell * r - S(2) * r * r) / den,
      (S(3) * ell + r) / den,
  };
  return {ell, r, Polynomial<S>(std::move(c))};
}

/// Exact check of the two factorizations behind Q_{l,r} >= 1_{x >= 0}:
///   l^2 (l+r)^3 Q(x)       = (l + x)^2 ((l+r)^3 - 2(l^2+3lr+r^2) x + (3l+r) x^2)
///   l^2 (l+r)^3 (Q(x) - 1) = x (4l^2 + 2lr + (3l+r) x) (x - r)^2
/// plus the minimum of the quadratic factor, (2l^4 + 4l^3 r + l^2 r^2)/(3l + r).
struct DominationProof {
  Rational ell, r;
  RationalPoly product_residual;
  RationalPoly shifted_residual;
  Rational quadratic_minimum;          // value at the vertex
  Rational quadratic_minimum_formula;  // closed form
  bool passed = false;
};

inline DominationProof verify_domination(const Rational& ell, const Rational& r) {
  auto cq = build_q(ell, r);
  const RationalPoly x = RationalPoly::x();
  const Rational lr = ell + r;
  const Rational scale = ell * ell * lr * lr * lr;
  const Rational mid = ell * ell + Rational(3) * ell * r + r * r;
  const Rational lead = Rational(3) * ell + r;
  RationalPoly quad{lr * lr * lr, Rational(-2) * mid, lead};
  RationalPoly root_l{ell, Rational(1)};
  RationalPoly root_r{-r, Rational(1)};

  DominationProof p;
  p.ell = ell;
  p.r = r;
  p.product_residual = scale * cq.q - root_l * root_l * quad;
  RationalPoly linear{Rational(4) * ell * ell + Rational(2) * ell * r, lead};
  p.shifted_residual = scale * (cq.q - RationalPoly::constant(Rational(1))) - x * linear * root_r * root_r;
  Rational vertex = mid / lead;
  p.quadratic_minimum = quad(vertex);
  p.quadratic_minimum_formula =
      (Rational(2) * ell.pow(4) + Rational(4) * ell.pow(3) * r + ell * ell * r * r) / lead;
  // For x >= 0 the linear factor 4l^2 + 2lr + (3l + r)x is positive since l, r > 0.
  p.passed = p.product_residual.is_zero() && p.shifted_residual.is_zero() &&
             p.quadratic_minimum == p.quadratic_minimum_formula && p.quadratic_minimum.sign() >= 0;
  return p;
}

/// E[Q(X - delta)] = constant + m2 E[X^2] + m3 E[X^3] + m4 E[X^4] when E[X] = 0.
template <class T>
struct Expansion {
  T constant;
  T m2;
  T m3;
  T m4;
  friend bool operator==(const Expansion&, const Expansion&) = default;
};

template <class S>
Expansion<S> expansion_coefficients(const CertificatePolynomial<S>& q, const S& delta) {
  S q0 = q.coeff(0), q1 = q.coeff(1), q2 = q.coeff(2), q3 = q.coeff(3), q4 = q.coeff(4);
  S d2 = delta * delta;
  S constant = q0 - delta * q1 + d2 * q2 - d2 * delta * q3 + d2 * d2 * q4;
  return {constant, q2 - S(3) * delta * q3 + S(6) * d2 * q4, q3 - S(4) * delta * q4, q4};
}

/// The same four coefficients as polynomials in delta.
template <class S>
Expansion<Polynomial<S>> expansion_polynomials(const Polynomial<S>& q) {
  S q0 = q.coeff(0), q1 = q.coeff(1), q2 = q.coeff(2), q3 = q.coeff(3), q4 = q.coeff(4);
  return {
      Polynomial<S>{q0, -q1, q2, -q3, q4},
      Polynomial<S>{q2, S(-3) * q3, S(6) * q4},
      Polynomial<S>{q3, S(-4) * q4},
      Polynomial<S>{q4},
  };
}

/// Worst-case (E[X^2], E[X^3], E[X^4]) substituted into the expansion.
template <class S>
struct Allowance {
  S m2, m3, m4;
};

template <class S>
Allowance<S> regime_allowance(const MomentRegime& regime, const S& variance, const std::optional<S>& sigma) {
  S s4 = variance * variance;
  switch (regime.kind) {
    case RegimeKind::BoundedUnit: return {variance, -variance, S(3) * s4 + variance};
    case RegimeKind::NonnegThird: return {variance, S(0), S(3) * s4 + variance};
    case RegimeKind::NegThirdTwoPoint:
      if (!sigma) throw std::invalid_argument("NegThirdTwoPoint allowance needs sigma, not just sigma^2");
      return {variance, -variance, S(3) * s4 + S(4) * variance * *sigma + variance};
    case RegimeKind::Kurtosis: return {variance, S(0), S(regime.c) * s4};
  }
  throw std::logic_error("unknown regime");
}

namespace detail {
template <class S>
void check_bound_preconditions(const CertificatePolynomial<S>& q, const S& delta) {
  if (q.r < q.ell) throw std::invalid_argument("regime_bound: requires l <= r");
  if (sign(delta) < 0) throw std::invalid_argument("regime_bound: requires delta >= 0");
}
template <class S>
S combine(const Expansion<S>& e, const Allowance<S>& a) {
  return e.constant + e.m2 * a.m2 + e.m3 * a.m3 + e.m4 * a.m4;
}
}  // namespace detail

/// Upper bound on E[Q(X - delta)] valid for every mean-zero X in `regime`
/// with standard deviation sigma. Relies on q3 < 0 < q4 (l <= r) and delta >= 0,
/// which make the E[X^3] coefficient negative and the E[X^4] one positive.
template <class S>
S regime_bound(const CertificatePolynomial<S>& q, const S& delta, const MomentRegime& regime, const S& sigma) {
  detail::check_bound_preconditions(q, delta);
  if (sign(sigma) < 0) throw std::invalid_argument("regime_bound: sigma must be >= 0");
  return detail::combine(expansion_coefficients(q, delta), regime_allowance(regime, sigma * sigma, std::optional(sigma)));
}

/// Variant taking sigma^2, for regimes whose allowance only involves even
/// powers of sigma (all but NegThirdTwoPoint).
template <class S>
S regime_bound_from_variance(const CertificatePolynomial<S>& q, const S& delta, const MomentRegime& regime,
                             const S& variance) {
  detail::check_bound_preconditions(q, delta);
  if (sign(variance) < 0) throw std::invalid_argument("regime_bound: variance must be >= 0");
  return detail::combine(expansion_coefficients(q, delta), regime_allowance(regime, variance, std::optional<S>()));
}

// ---------------------------------------------------------------------------
// Case certificates

/// How (l, r) depend on sigma: proportional (l = a sigma, r = b sigma), in
/// which case the bound is a polynomial in u = 1/sigma, or fixed constants,
/// in which case it is a polynomial in sigma.
enum class CaseShape { Scaled, Fixed };

struct CaseSpec {
  std::string id;
  CaseShape shape = CaseShape::Scaled;
  QuadExt ell, r;  // multipliers of sigma when Scaled
  Rational sigma_lo;
  std::optional<Rational> sigma_hi;  // nullopt = +infinity
  bool convexity = false;            // argue convexity in u as well
};

struct TheoremSpec {
  std::string id;
  Rational delta;
  MomentRegime regime;
  Rational target;
  std::vector<CaseSpec> cases;
};

/// Applied to the coefficients of the (unscaled) Q before the bound is formed;
/// lets tests falsify a case deliberately.
using CoefficientTamper = std::function<void(std::vector<QuadExt>&)>;

struct CaseCertificate {
  std::string theorem;
  std::string case_id;
  std::string ell_formula, r_formula;
  CaseShape shape = CaseShape::Scaled;
  Rational delta;
  MomentRegime regime;
  Rational target;
  Rational sigma_lo;
  std::optional<Rational> sigma_hi;
  std::string variable;  // "u=1/sigma" or "sigma"
  Rational var_lo, var_hi;

  QuadPoly bound;                                // E[Q(X - delta)] <= bound(variable)
  std::optional<RationalInterval> sqrt3_bounds;  // used when bound has sqrt(3) terms
  SignCertificate sturm;
  std::optional<SignCertificate> convexity;
  bool spot_check_passed = false;
  bool certified = false;
  std::string failure;
};

struct TheoremCertificate {
  std::string theorem;
  Rational delta;
  MomentRegime regime;
  Rational target;
  std::vector<CaseCertificate> cases;
  bool coverage_ok = false;
  bool certified = false;
  std::string failure;
};

namespace detail {

inline std::string multiplier_formula(const QuadExt& m, CaseShape shape) {
  if (shape == CaseShape::Fixed) return m.str();
  if (m == QuadExt(1)) return "sigma";
  bool bare = m.is_rational() || m.rational_part().is_zero();
  return (bare ? m.str() : "(" + m.str() + ")") + "*sigma";
}

/// Moment allowances divided by sigma^3 and sigma^4, as polynomials in u.
inline std::pair<QuadPoly, QuadPoly> normalized_allowance(const MomentRegime& regime) {
  QuadExt z(0), one(1), three(3);
  switch (regime.kind) {
    case RegimeKind::BoundedUnit: return {QuadPoly{z, -one}, QuadPoly{three, z, one}};
    case RegimeKind::NonnegThird: return {QuadPoly{}, QuadPoly{three, z, one}};
    case RegimeKind::NegThirdTwoPoint: return {QuadPoly{z, -one}, QuadPoly{three, QuadExt(4), one}};
    case RegimeKind::Kurtosis: return {QuadPoly{}, QuadPoly{QuadExt(regime.c)}};
  }
  throw std::logic_error("unknown regime");
}

/// Allowances as polynomials in sigma.
inline Allowance<QuadPoly> sigma_allowance(const MomentRegime& regime) {
  QuadExt z(0), one(1), three(3);
  QuadPoly s2{z, z, one};
  switch (regime.kind) {
    case RegimeKind::BoundedUnit: return {s2, -s2, QuadPoly{z, z, one, z, three}};
    case RegimeKind::NonnegThird: return {s2, QuadPoly{}, QuadPoly{z, z, one, z, three}};
    case RegimeKind::NegThirdTwoPoint: return {s2, -s2, QuadPoly{z, z, one, QuadExt(4), three}};
    case RegimeKind::Kurtosis: return {s2, QuadPoly{}, QuadPoly::monomial(QuadExt(regime.c), 4)};
  }
  throw std::logic_error("unknown regime");
}

}  // namespace detail

/// Bound polynomial for one case. Scaled shape: Q_{a sigma, b sigma}(x) equals
/// Q_{a,b}(x / sigma), so with Y = X / sigma the bound is
///   E0(delta u) + E2(delta u) + E3(delta u) E[Y^3] + E4 E[Y^4]
/// in u = 1/sigma. Fixed shape: E_j(delta) times the allowances in sigma.
inline QuadPoly case_bound_polynomial(const CaseSpec& cs, const Rational& delta, const MomentRegime& regime,
                                      const CoefficientTamper& tamper = {}) {
  auto cq = build_q(cs.ell, cs.r);
  std::vector<QuadExt> coeffs = cq.q.coefficients();
  coeffs.resize(5, QuadExt(0));
  if (tamper) tamper(coeffs);
  QuadPoly q(coeffs);
  auto e = expansion_polynomials(q);
  if (cs.shape == CaseShape::Scaled) {
    QuadExt d(delta);
    auto [m3, m4] = detail::normalized_allowance(regime);
    return e.constant.scale_variable(d) + e.m2.scale_variable(d) + e.m3.scale_variable(d) * m3 +
           e.m4.scale_variable(d) * m4;
  }
  QuadExt d(delta);
  auto a = detail::sigma_allowance(regime);
  return QuadPoly{e.constant(d)} + e.m2(d) * a.m2 + e.m3(d) * a.m3 + e.m4(d) * a.m4;
}

/// Replace sqrt(3) coefficient-wise by whichever rational endpoint makes each
/// term larger; valid on u >= 0 where every u^i >= 0.
inline RationalPoly rational_majorant(const QuadPoly& p, const RationalInterval& sqrt3) {
  auto [a, b] = split_sqrt3(p);
  std::vector<Rational> c(std::max(a.coefficients().size(), b.coefficients().size()), Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Rational bi = b.coeff(i);
    c[i] = a.coeff(i) + bi * (bi.sign() >= 0 ? sqrt3.hi() : sqrt3.lo());
  }
  return RationalPoly(std::move(c));
}

namespace detail {

inline std::vector<Rational> spot_sigmas(const CaseSpec& cs, int count) {
  std::vector<Rational> out;
  Rational lo = cs.sigma_lo;
  Rational hi = cs.sigma_hi ? *cs.sigma_hi : (lo.is_zero() ? Rational(100) : lo * Rational(100));
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * Rational(i, count - 1));
  if (!cs.sigma_hi) out.push_back(lo * Rational(100000));
  return out;
}

}  // namespace detail

/// Direct evaluation of the regime bound at concrete sigma values, building
/// Q_{l(sigma), r(sigma)} afresh each time. Independent of the polynomial route.
inline bool spot_check_case(const CaseSpec& cs, const Rational& delta, const MomentRegime& regime,
                            const Rational& target, int count = 25) {
  for (const auto& s : detail::spot_sigmas(cs, count)) {
    if (cs.shape == CaseShape::Scaled && s.is_zero()) continue;
    QuadExt sig(s);
    QuadExt ell = cs.shape == CaseShape::Scaled ? cs.ell * sig : cs.ell;
    QuadExt r = cs.shape == CaseShape::Scaled ? cs.r * sig : cs.r;
    QuadExt b = regime_bound(build_q(ell, r), QuadExt(delta), regime, sig);
    if (b > QuadExt(target)) return false;
  }
  return true;
}

inline CaseCertificate certify_case(const TheoremSpec& th, const CaseSpec& cs, const CoefficientTamper& tamper = {}) {
  CaseCertificate cc;
  cc.theorem = th.id;
  cc.case_id = cs.id;
  cc.shape = cs.shape;
  cc.ell_formula = detail::multiplier_formula(cs.ell, cs.shape);
  cc.r_formula = detail::multiplier_formula(cs.r, cs.shape);
  cc.delta = th.delta;
  cc.regime = th.regime;
  cc.target = th.target;
  cc.sigma_lo = cs.sigma_lo;
  cc.sigma_hi = cs.sigma_hi;
  if (cs.shape == CaseShape::Scaled) {
    if (cs.sigma_lo.sign() <= 0) throw std::invalid_argument("scaled case needs sigma_lo > 0");
    cc.variable = "u=1/sigma";
    cc.var_lo = cs.sigma_hi ? cs.sigma_hi->reciprocal() : Rational(0);
    cc.var_hi = cs.sigma_lo.reciprocal();
  } else {
    if (!cs.sigma_hi) throw std::invalid_argument("fixed case needs a bounded sigma interval");
    cc.variable = "sigma";
    cc.var_lo = cs.sigma_lo;
    cc.var_hi = *cs.sigma_hi;
  }
  cc.bound = case_bound_polynomial(cs, th.delta, th.regime, tamper);

  RationalPoly claim;
  auto [rat, irr] = split_sqrt3(cc.bound);
  if (irr.is_zero()) {
    claim = rat;
  } else {
    cc.sqrt3_bounds = sqrt_enclosure(Rational(3), 30);
    claim = rational_majorant(cc.bound, *cc.sqrt3_bounds);
  }
  cc.sturm = sturm_sign_on_interval(claim, cc.var_lo, cc.var_hi, SignClaim::NonPositive, th.target);
  bool ok = cc.sturm.certified;
  if (cs.convexity) {
    if (!irr.is_zero()) throw std::invalid_argument("convexity route needs a rational bound polynomial");
    cc.convexity = convex_endpoint_bound(rat, cc.var_lo, cc.var_hi, th.target);
    ok = ok && cc.convexity->certified;
    if (cc.convexity->certified != cc.sturm.certified)
      cc.failure = "convexity and Sturm certificates disagree";
  }
  cc.spot_check_passed = spot_check_case(cs, th.delta, th.regime, th.target);
  cc.certified = ok && cc.spot_check_passed && cc.failure.empty();
  if (!cc.certified && cc.failure.empty()) {
    std::string where = cc.variable + " in [" + cc.var_lo.str() + ", " + cc.var_hi.str() + "]";
    const SignCertificate& bad = !cc.sturm.certified ? cc.sturm : (cc.convexity ? *cc.convexity : cc.sturm);
    if (bad.witness_point) where += ", violated at " + cc.variable.substr(0, 1) + "=" + bad.witness_point->str();
    cc.failure = !cc.spot_check_passed && cc.sturm.certified ? "spot check exceeded target; " + where
                                                              : "bound exceeds target; " + where;
  }
  return cc;
}

/// The union of the cases' sigma intervals contains [0, infinity).
inline bool covers_half_line(const std::vector<CaseCertificate>& cases) {
  std::vector<std::pair<Rational, std::optional<Rational>>> iv;
  for (const auto& c : cases) iv.emplace_back(c.sigma_lo, c.sigma_hi);
  std::sort(iv.begin(), iv.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Rational reach(0);
  for (const auto& [lo, hi] : iv) {
    if (lo > reach) return false;
    if (!hi) return true;
    if (*hi > reach) reach = *hi;
  }
  return false;
}

inline TheoremCertificate certify_theorem(const TheoremSpec& th, const CoefficientTamper& tamper = {}) {
  TheoremCertificate out;
  out.theorem = th.id;
  out.delta = th.delta;
  out.regime = th.regime;
  out.target = th.target;
  for (const auto& cs : th.cases) {
    out.cases.push_back(certify_case(th, cs, tamper));
    if (!out.cases.back().certified) {
      out.failure = cs.id + ": " + out.cases.back().failure;
      return out;
    }
  }
  out.coverage_ok = covers_half_line(out.cases);
  out.certified = out.coverage_ok;
  if (!out.coverage_ok) out.failure = "sigma intervals do not cover [0, infinity)";
  return out;
}

// ---------------------------------------------------------------------------
// The three case analyses

/// Bounded summands, delta = 1/3: Pr[X >= 1/3] <= 5/6.
inline TheoremSpec theorem_third_spec() {
  auto R = [](const char* s) { return Rational::parse(s); };
  TheoremSpec th{"theorem3", R("1/3"), MomentRegime::bounded_unit(), R("5/6"), {}};
  th.cases = {
      {"i: l=r=sqrt(3)*sigma", CaseShape::Scaled, QuadExt::sqrt3(), QuadExt::sqrt3(), R("3"), std::nullopt, false},
      {"ii: l=r=2*sigma", CaseShape::Scaled, QuadExt(2), QuadExt(2), R("3/2"), R("3"), true},
      {"iii: l=r=9/4*sigma", CaseShape::Scaled, QuadExt(R("9/4")), QuadExt(R("9/4")), R("1"), R("3/2"), true},
      {"iv: l=r=5/2*sigma", CaseShape::Scaled, QuadExt(R("5/2")), QuadExt(R("5/2")), R("1/2"), R("1"), true},
      {"v: l=r=3/2", CaseShape::Fixed, QuadExt(R("3/2")), QuadExt(R("3/2")), R("0"), R("1/2"), false},
  };
  return th;
}

/// Bounded summands with nonnegative third moment: Pr[X >= delta] <= 5/6,
/// delta = 4/25 by default.
inline TheoremSpec lemma_425_spec(const Rational& delta = Rational(4, 25)) {
  auto R = [](const char* s) { return Rational::parse(s); };
  TheoremSpec th{"lemma425", delta, MomentRegime::nonneg_third(), R("5/6"), {}};
  th.cases = {
      {"i: l=r=sqrt(3)*sigma", CaseShape::Scaled, QuadExt::sqrt3(), QuadExt::sqrt3(), R("5/4"), std::nullopt, false},
      {"ii: l=2*sigma, r=5/2*sigma", CaseShape::Scaled, QuadExt(2), QuadExt(R("5/2")), R("17/25"), R("5/4"), true},
      {"iii: l=15/7*sigma, r=3*sigma", CaseShape::Scaled, QuadExt(R("15/7")), QuadExt(3), R("1/2"), R("17/25"),
       true},
      {"iv: l=1, r=2", CaseShape::Fixed, QuadExt(1), QuadExt(2), R("0"), R("1/2"), false},
  };
  return th;
}

/// Centered two-point summands with nonpositive third moment: Pr[X >= 1] <= 5/6.
inline TheoremSpec lemma_negthird_spec() {
  auto R = [](const char* s) { return Rational::parse(s); };
  TheoremSpec th{"lemma-negthird", R("1"), MomentRegime::neg_third_two_point(), R("5/6"), {}};
  th.cases = {
      {"i: l=r=sqrt(3)*sigma", CaseShape::Scaled, QuadExt::sqrt3(), QuadExt::sqrt3(), R("16"), std::nullopt, false},
      {"ii: l=r=19/10*sigma", CaseShape::Scaled, QuadExt(R("19/10")), QuadExt(R("19/10")), R("5/2"), R("16"), true},
      {"iii: l=r=5", CaseShape::Fixed, QuadExt(5), QuadExt(5), R("0"), R("5/2"), false},
  };
  return th;
}

inline TheoremCertificate verify_theorem_third(const CoefficientTamper& tamper = {}) {
  return certify_theorem(theorem_third_spec(), tamper);
}
inline TheoremCertificate verify_lemma_425(const Rational& delta = Rational(4, 25),
                                           const CoefficientTamper& tamper = {}) {
  return certify_theorem(lemma_425_spec(delta), tamper);
}
inline TheoremCertificate verify_lemma_negthird(const CoefficientTamper& tamper = {}) {
  return certify_theorem(lemma_negthird_spec(), tamper);
}

// ---------------------------------------------------------------------------
// Kurtosis bound

/// Pr[X >= 0] <= 1 - 1/(2c) when E[X^3] >= 0 and E[X^4] <= c sigma^4, with a
/// distribution attaining it.
struct Theorem2Certificate {
  Rational c;
  Rational target;       // 1 - 1/(2c)
  Rational bound_value;  // E[Q(X)] upper bound from the certificate polynomial
  CaseCertificate case_certificate;
  DiscreteDistribution tight_example;
  Rational tight_probability;  // Pr[X >= 0] under tight_example
  Rational tight_kurtosis;     // E[X^4] / E[X^2]^2 under tight_example
  bool certified = false;
};

/// The bound is invariant under X -> sX, so it is evaluated at sigma^2 = c,
/// where l = r = sqrt(c) sigma = c is rational. With delta = 0 only the even
/// coefficients q2 = -1/l^2 and q4 = 1/(2 l^4) enter.
inline Theorem2Certificate verify_theorem2(const Rational& c) {
  if (c < Rational(1)) throw std::invalid_argument("verify_theorem2: requires c >= 1");
  Theorem2Certificate out;
  out.c = c;
  out.target = Rational(1) - (Rational(2) * c).reciprocal();
  auto regime = MomentRegime::kurtosis(c);
  out.bound_value = regime_bound_from_variance(build_q(c, c), Rational(0), regime, c);

  CaseCertificate& cc = out.case_certificate;
  cc.theorem = "theorem2";
  cc.case_id = "l=r=sqrt(c)*sigma";
  cc.ell_formula = cc.r_formula = "sqrt(" + c.str() + ")*sigma";
  cc.delta = Rational(0);
  cc.regime = regime;
  cc.target = out.target;
  cc.sigma_lo = Rational(0);
  cc.sigma_hi = std::nullopt;
  cc.variable = "u=1/sigma";
  cc.var_lo = Rational(0);
  cc.var_hi = Rational(1);  // scale-invariant: the bound is constant in u
  cc.bound = QuadPoly{QuadExt(out.bound_value)};
  cc.sturm = sturm_sign_on_interval(RationalPoly{out.bound_value}, cc.var_lo, cc.var_hi, SignClaim::NonPositive,
                                    out.target);
  // Scale invariance: sigma^2 = c w^2 gives the rational choice l = r = c w.
  cc.spot_check_passed = true;
  for (const auto& w : {Rational(1, 7), Rational(1), Rational(5, 2), Rational(40)}) {
    Rational b = regime_bound_from_variance(build_q(c * w, c * w), Rational(0), regime, c * w * w);
    cc.spot_check_passed = cc.spot_check_passed && b <= out.target;
  }
  cc.certified = cc.sturm.certified && cc.spot_check_passed && out.bound_value == out.target;
  if (!cc.certified) cc.failure = "bound " + out.bound_value.str() + " != " + out.target.str();

  Rational p = (Rational(2) * c).reciprocal();
  out.tight_example = symmetric_three_point(Rational(1), p);
  out.tight_probability = out.tight_example.prob_at_least(Rational(0));
  Rational m2 = out.tight_example.raw_moment(2);
  out.tight_kurtosis = out.tight_example.raw_moment(4) / (m2 * m2);
  out.certified = cc.certified && out.tight_probability == out.target && out.tight_kurtosis == c &&
                  out.tight_example.raw_moment(3).sign() >= 0 && out.tight_example.mean().is_zero();
  return out;
}

// ---------------------------------------------------------------------------
// The constant beta = (46/279) e^{-4/25}

struct BetaCertificate {
  Rational coefficient{46, 279};  // (1 - 1/(48 (1 + 15/16))) / 6
  Rational exponent{-4, 25};      // -1/tau with tau = 25/4
  Rational threshold{7, 50};
  Rational max_width;
  int terms = 0;
  RationalInterval exp_enclosure;
  RationalInterval beta_enclosure;
  bool coefficient_identity = false;
  bool certified = false;
};

/// Interval proof of beta > 7/50, adding series terms until the enclosure of
/// beta is at most max_width wide.
inline BetaCertificate verify_beta(const Rational& max_width = Rational(BigInt(1), BigInt("1000000000000"))) {
  if (max_width.sign() <= 0) throw std::invalid_argument("verify_beta: width must be > 0");
  BetaCertificate out;
  out.max_width = max_width;
  Rational head = Rational(1) - (Rational(48) * (Rational(1) + Rational(15, 16))).reciprocal();
  out.coefficient_identity = head / Rational(6) == out.coefficient;
  for (out.terms = 1;; ++out.terms) {
    out.exp_enclosure = smalldev::exp_enclosure(out.exponent, out.terms);
    out.beta_enclosure = RationalInterval(out.coefficient) * out.exp_enclosure;
    if (out.beta_enclosure.width() <= max_width) break;
    if (out.terms > 1000) throw std::logic_error("verify_beta: enclosure failed to narrow");
  }
  out.certified = out.coefficient_identity && interval_strictly_greater(out.beta_enclosure, out.threshold);
  return out;
}

}  // namespace smalldev
