#pragma once
// Dense univariate polynomials over the exact scalar tower, plus certified
// sign claims on closed intervals (Sturm sequences, convexity + endpoints).

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smalldev/exactnum.hpp"

namespace smalldev {

/// coefficient i multiplies x^i; trailing zeros are always stripped.
template <class S>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<S> coeffs) : c_(coeffs) { normalize(); }

  static Polynomial constant(S v) { return Polynomial(std::vector<S>{std::move(v)}); }
  static Polynomial x() { return Polynomial(std::vector<S>{S(0), S(1)}); }
  static Polynomial monomial(const S& coef, std::size_t power) {
    std::vector<S> c(power + 1, S(0));
    c[power] = coef;
    return Polynomial(std::move(c));
  }

  [[nodiscard]] const std::vector<S>& coefficients() const { return c_; }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] S coeff(std::size_t i) const { return i < c_.size() ? c_[i] : S(0); }
  [[nodiscard]] const S& leading() const { return c_.back(); }

  /// Horner evaluation.
  [[nodiscard]] S operator()(const S& x) const {
    S acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  [[nodiscard]] Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<S> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * S(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  /// x -> p(scale * x)
  [[nodiscard]] Polynomial scale_variable(const S& scale) const {
    std::vector<S> c = c_;
    S pw(1);
    for (auto& v : c) {
      v = v * pw;
      pw = pw * scale;
    }
    return Polynomial(std::move(c));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    normalize();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) { return *this += -o; }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<S> c = a.c_;
    for (auto& v : c) v = -v;
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> c(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const S& s, const Polynomial& p) {
    std::vector<S> c = p.c_;
    for (auto& v : c) v = s * v;
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& p, const S& s) { return s * p; }

  /// Euclidean division over a field: *this = q * d + r, deg r < deg d.
  [[nodiscard]] std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("Polynomial: division by zero polynomial");
    std::vector<S> rem = c_;
    int dd = d.degree();
    if (degree() < dd) return {Polynomial(), *this};
    std::vector<S> quo(static_cast<std::size_t>(degree() - dd + 1), S(0));
    for (int i = degree(); i >= dd; --i) {
      S f = rem[static_cast<std::size_t>(i)] / d.leading();
      quo[static_cast<std::size_t>(i - dd)] = f;
      for (int j = 0; j <= dd; ++j)
        rem[static_cast<std::size_t>(i - dd + j)] =
            rem[static_cast<std::size_t>(i - dd + j)] - f * d.c_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void normalize() {
    while (!c_.empty() && sign(c_.back()) == 0) c_.pop_back();
  }
  std::vector<S> c_;
};

using RationalPoly = Polynomial<Rational>;
using QuadPoly = Polynomial<QuadExt>;

template <class S>
S eval(const Polynomial<S>& p, const S& x) {
  return p(x);
}

/// x -> p(x - delta), by binomial expansion of each power.
template <class S>
Polynomial<S> shift(const Polynomial<S>& p, const S& delta) {
  const auto& c = p.coefficients();
  std::vector<S> out(c.size(), S(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    // (x - delta)^i = sum_j C(i,j) x^j (-delta)^(i-j)
    S binom(1);
    for (std::size_t j = 0; j <= i; ++j) {
      if (j > 0) binom = binom * S(static_cast<long>(i - j + 1)) / S(static_cast<long>(j));
      S pw(1);
      for (std::size_t t = 0; t < i - j; ++t) pw = pw * (-delta);
      out[j] = out[j] + c[i] * binom * pw;
    }
  }
  return Polynomial<S>(std::move(out));
}

/// Lift a rational polynomial into Q(sqrt 3).
inline QuadPoly lift(const RationalPoly& p) {
  std::vector<QuadExt> c;
  for (const auto& v : p.coefficients()) c.emplace_back(v);
  return QuadPoly(std::move(c));
}

/// Split p into rational part A and sqrt(3) part B with p = A + sqrt(3) B.
inline std::pair<RationalPoly, RationalPoly> split_sqrt3(const QuadPoly& p) {
  std::vector<Rational> a, b;
  for (const auto& v : p.coefficients()) {
    a.push_back(v.rational_part());
    b.push_back(v.sqrt3_part());
  }
  return {RationalPoly(std::move(a)), RationalPoly(std::move(b))};
}

inline std::vector<std::string> to_strings(const RationalPoly& p) {
  std::vector<std::string> out;
  for (const auto& v : p.coefficients()) out.push_back(v.str());
  return out;
}
inline std::vector<std::string> to_strings(const QuadPoly& p) {
  std::vector<std::string> out;
  for (const auto& v : p.coefficients()) out.push_back(v.str());
  return out;
}

// ---------------------------------------------------------------------------
// Sturm sequences

inline RationalPoly monic(const RationalPoly& p) {
  if (p.is_zero()) return p;
  return p.leading().reciprocal() * p;
}

inline RationalPoly gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    RationalPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// p / gcd(p, p'): same roots as p, all simple.
inline RationalPoly squarefree_part(const RationalPoly& p) {
  if (p.degree() < 1) return p;
  return p.divmod(gcd(p, p.derivative())).first;
}

/// Sturm sequence of the squarefree part of p; sign-change counts then give
/// distinct roots even when an endpoint is a multiple root of p.
inline std::vector<RationalPoly> sturm_sequence(const RationalPoly& p_in) {
  RationalPoly p = squarefree_part(p_in);
  std::vector<RationalPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  RationalPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    RationalPoly r = -seq[seq.size() - 2].divmod(seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

inline int sign_changes(const std::vector<RationalPoly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : seq) {
    int s = q(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Number of distinct real roots of p in the half-open interval (a, b].
inline int count_roots(const std::vector<RationalPoly>& seq, const Rational& a, const Rational& b) {
  return sign_changes(seq, a) - sign_changes(seq, b);
}
inline int count_roots(const RationalPoly& p, const Rational& a, const Rational& b) {
  return count_roots(sturm_sequence(p), a, b);
}

enum class SignClaim { NonPositive, NonNegative };
enum class CertMethod { Sturm, EndpointConvexity };

inline std::string to_string(SignClaim c) { return c == SignClaim::NonPositive ? "<=" : ">="; }
inline std::string to_string(CertMethod m) { return m == CertMethod::Sturm ? "sturm" : "endpoint-convexity"; }

/// One subinterval of a Sturm certificate: endpoint values of p - bound and the
/// number of distinct roots strictly inside.
struct SturmLeaf {
  Rational lo, hi;
  Rational value_lo, value_hi;
  int interior_roots = 0;
};

/// Claim: p(x) <= bound (or >= bound) for every x in [lo, hi].
struct SignCertificate {
  RationalPoly poly;
  Rational lo, hi;
  Rational bound;
  SignClaim claim = SignClaim::NonPositive;
  CertMethod method = CertMethod::Sturm;
  bool certified = false;

  // Failure detail: a violating point when one was found, else the subinterval
  // on which the procedure gave up.
  std::optional<Rational> witness_point;
  std::optional<std::pair<Rational, Rational>> witness_interval;
  std::string note;

  // Sturm evidence.
  std::vector<SturmLeaf> leaves;

  // Convexity evidence.
  std::string convexity_basis;  // "nonnegative-coefficients" | "sturm-second-derivative"
  std::vector<SignCertificate> sub_certificates;
  Rational value_lo, value_hi;
};

namespace detail {

// Rewrites the claim as g <= 0 on [lo, hi].
inline RationalPoly normalized_claim(const RationalPoly& p, const Rational& bound, SignClaim claim) {
  RationalPoly g = p - RationalPoly::constant(bound);
  return claim == SignClaim::NonPositive ? g : -g;
}

inline bool sturm_leaves(const RationalPoly& g, const std::vector<RationalPoly>& seq, const Rational& a,
                         const Rational& b, int depth, SignCertificate& cert) {
  Rational ga = g(a), gb = g(b);
  if (ga.sign() > 0 || gb.sign() > 0) {
    cert.witness_point = ga.sign() > 0 ? a : b;
    return false;
  }
  int in_half_open = count_roots(seq, a, b);
  int interior = in_half_open - (gb.is_zero() ? 1 : 0);
  bool decided = false;
  if (interior == 0) {
    decided = true;
  } else if (interior == 1 && !ga.is_zero() && !gb.is_zero()) {
    // One distinct root, both endpoints strictly negative: g keeps the
    // endpoint signs on either side of it.
    decided = true;
  }
  if (decided) {
    if (interior == 0 && a < b) {
      Rational mid = (a + b) / Rational(2);
      if (g(mid).sign() > 0) {
        cert.witness_point = mid;
        return false;
      }
    }
    cert.leaves.push_back({a, b, ga, gb, interior});
    return true;
  }
  if (depth > 200) {
    cert.witness_interval = std::make_pair(a, b);
    cert.note = "root isolation did not terminate";
    return false;
  }
  Rational mid = (a + b) / Rational(2);
  return sturm_leaves(g, seq, a, mid, depth + 1, cert) && sturm_leaves(g, seq, mid, b, depth + 1, cert);
}

}  // namespace detail

/// Certify p <= bound (or >= bound) on [lo, hi] with Sturm root counting.
/// The interval is bisected until every piece either has no interior root of
/// p - bound or exactly one interior root with strictly correct-sign endpoints.
inline SignCertificate sturm_sign_on_interval(const RationalPoly& p, const Rational& lo, const Rational& hi,
                                              SignClaim claim = SignClaim::NonPositive,
                                              const Rational& bound = Rational(0)) {
  if (hi < lo) throw std::invalid_argument("sturm_sign_on_interval: empty interval");
  SignCertificate cert;
  cert.poly = p;
  cert.lo = lo;
  cert.hi = hi;
  cert.bound = bound;
  cert.claim = claim;
  RationalPoly g = detail::normalized_claim(p, bound, claim);
  if (g.is_zero()) {
    cert.certified = true;
    cert.leaves.push_back({lo, hi, Rational(0), Rational(0), 0});
    return cert;
  }
  auto seq = sturm_sequence(g);
  cert.certified = detail::sturm_leaves(g, seq, lo, hi, 0, cert);
  if (!cert.certified && cert.witness_point && !cert.witness_interval)
    cert.witness_interval = std::make_pair(*cert.witness_point, *cert.witness_point);
  if (cert.certified) cert.leaves.shrink_to_fit();
  return cert;
}

/// Certify p <= bound on [u1, u2], 0 <= u1, from convexity and the two
/// endpoint values. Convexity comes from nonnegative coefficients of u^i for
/// i >= 2, or failing that from a Sturm proof that p'' >= 0 on the interval.
inline SignCertificate convex_endpoint_bound(const RationalPoly& p, const Rational& u1, const Rational& u2,
                                             const Rational& bound) {
  if (u2 < u1) throw std::invalid_argument("convex_endpoint_bound: empty interval");
  SignCertificate cert;
  cert.poly = p;
  cert.lo = u1;
  cert.hi = u2;
  cert.bound = bound;
  cert.method = CertMethod::EndpointConvexity;
  bool coeff_convex = u1.sign() >= 0;
  for (std::size_t i = 2; i < p.coefficients().size() && coeff_convex; ++i)
    coeff_convex = p.coefficients()[i].sign() >= 0;
  if (coeff_convex) {
    cert.convexity_basis = "nonnegative-coefficients";
  } else {
    SignCertificate second = sturm_sign_on_interval(p.derivative().derivative(), u1, u2, SignClaim::NonNegative);
    cert.convexity_basis = "sturm-second-derivative";
    bool ok = second.certified;
    cert.sub_certificates.push_back(std::move(second));
    if (!ok) {
      cert.note = "convexity could not be established";
      cert.witness_interval = std::make_pair(u1, u2);
      return cert;
    }
  }
  cert.value_lo = p(u1);
  cert.value_hi = p(u2);
  if (cert.value_lo > bound) {
    cert.witness_point = u1;
  } else if (cert.value_hi > bound) {
    cert.witness_point = u2;
  } else {
    cert.certified = true;
    return cert;
  }
  cert.witness_interval = std::make_pair(*cert.witness_point, *cert.witness_point);
  cert.note = "endpoint exceeds bound";
  return cert;
}

/// Re-derive the claim from the recorded evidence alone.
inline bool replay(const SignCertificate& cert) {
  if (!cert.certified) return false;
  if (cert.method == CertMethod::EndpointConvexity) {
    if (cert.convexity_basis == "nonnegative-coefficients") {
      if (cert.lo.sign() < 0) return false;
      for (std::size_t i = 2; i < cert.poly.coefficients().size(); ++i)
        if (cert.poly.coefficients()[i].sign() < 0) return false;
    } else {
      if (cert.sub_certificates.size() != 1 || !replay(cert.sub_certificates[0])) return false;
      const auto& s = cert.sub_certificates[0];
      if (!(s.poly == cert.poly.derivative().derivative()) || s.claim != SignClaim::NonNegative ||
          s.lo != cert.lo || s.hi != cert.hi || !s.bound.is_zero())
        return false;
    }
    return cert.poly(cert.lo) <= cert.bound && cert.poly(cert.hi) <= cert.bound;
  }
  RationalPoly g = detail::normalized_claim(cert.poly, cert.bound, cert.claim);
  if (cert.leaves.empty() || cert.leaves.front().lo != cert.lo || cert.leaves.back().hi != cert.hi) return false;
  if (g.is_zero()) return true;
  auto seq = sturm_sequence(g);
  for (std::size_t i = 0; i < cert.leaves.size(); ++i) {
    const auto& leaf = cert.leaves[i];
    if (i > 0 && cert.leaves[i - 1].hi != leaf.lo) return false;
    Rational ga = g(leaf.lo), gb = g(leaf.hi);
    if (ga != leaf.value_lo || gb != leaf.value_hi) return false;
    if (ga.sign() > 0 || gb.sign() > 0) return false;
    int interior = count_roots(seq, leaf.lo, leaf.hi) - (gb.is_zero() ? 1 : 0);
    if (interior != leaf.interior_roots) return false;
    if (interior == 0) {
      if (leaf.lo < leaf.hi && g((leaf.lo + leaf.hi) / Rational(2)).sign() > 0) return false;
    } else if (interior != 1 || ga.is_zero() || gb.is_zero()) {
      return false;
    }
  }
  return true;
}

}  // namespace smalldev
