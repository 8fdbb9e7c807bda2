#pragma once
// Exact scalar tower: GMP-backed rationals, the quadratic field Q(sqrt 3),
// and rational-endpoint intervals for transcendental constants.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace smalldev {

using BigInt = mpz_class;

/// Arbitrary-precision rational, always in canonical form (den > 0, reduced).
class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long v) : v_(BigInt(std::to_string(v))) {}  // NOLINT
  Rational(const BigInt& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Accepts "p/q", "-7", "0.68", "-1.25e-3".
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
      auto b = t.find_first_not_of(" \t\n\r");
      auto e = t.find_last_not_of(" \t\n\r");
      t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      BigInt num = parse_int(s.substr(0, slash));
      BigInt den = parse_int(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    return parse_decimal(s);
  }

  [[nodiscard]] const mpq_class& raw() const { return v_; }
  [[nodiscard]] BigInt num() const { return v_.get_num(); }
  [[nodiscard]] BigInt den() const { return v_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(v_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
  [[nodiscard]] double to_double() const { return v_.get_d(); }

  [[nodiscard]] Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  [[nodiscard]] Rational reciprocal() const {
    if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
    return Rational(mpq_class(1 / v_));
  }
  [[nodiscard]] Rational pow(long e) const {
    if (e < 0) return reciprocal().pow(-e);
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
  }
  [[nodiscard]] BigInt floor() const {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
  }
  [[nodiscard]] BigInt ceil() const {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
  }

  /// Canonical "p/q" form; integers print without a denominator.
  [[nodiscard]] std::string str() const { return v_.get_str(); }

  /// Decimal approximation with `digits` significant digits.
  [[nodiscard]] std::string decimal(int digits = 12) const {
    mpf_class f(v_, 512);
    std::ostringstream os;
    os << std::setprecision(digits) << f;
    return os.str();
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static BigInt parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: missing integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("Rational::parse: bad integer '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("Rational::parse: bad integer '" + s + "'");
    return BigInt(s[0] == '+' ? s.substr(1) : s, 10);
  }
  static Rational parse_decimal(const std::string& s) {
    std::string mant = s;
    long exp10 = 0;
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
      mant = s.substr(0, e);
      try {
        std::size_t used = 0;
        exp10 = std::stol(s.substr(e + 1), &used);
        if (used != s.size() - e - 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::invalid_argument("Rational::parse: bad exponent in '" + s + "'");
      }
    }
    bool neg = !mant.empty() && mant[0] == '-';
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant = mant.substr(1);
    auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
      digits = mant.substr(0, dot) + mant.substr(dot + 1);
      exp10 -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty()) throw std::invalid_argument("Rational::parse: bad number '" + s + "'");
    BigInt n = parse_int(digits);
    if (neg) n = -n;
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    return exp10 < 0 ? Rational(n, p) : Rational(BigInt(n * p));
  }

  mpq_class v_{0};
};

inline int sign(const Rational& x) { return x.sign(); }

/// a + b*sqrt(3) with rational a, b.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadExt(int a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExt(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QuadExt sqrt3() { return {Rational(0), Rational(1)}; }

  [[nodiscard]] const Rational& rational_part() const { return a_; }
  [[nodiscard]] const Rational& sqrt3_part() const { return b_; }
  [[nodiscard]] bool is_rational() const { return b_.is_zero(); }
  [[nodiscard]] QuadExt conjugate() const { return {a_, -b_}; }
  /// a^2 - 3 b^2, i.e. x times its conjugate.
  [[nodiscard]] Rational norm() const { return a_ * a_ - Rational(3) * b_ * b_; }

  /// Exact sign of a + b*sqrt(3): when a and b disagree, compare a^2 with 3 b^2.
  [[nodiscard]] int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Rational a2 = a_ * a_, b2 = Rational(3) * b_ * b_;
    if (a2 == b2) return 0;
    return a2 > b2 ? sa : sb;
  }

  QuadExt& operator+=(const QuadExt& o) { a_ += o.a_; b_ += o.b_; return *this; }
  QuadExt& operator-=(const QuadExt& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  QuadExt& operator*=(const QuadExt& o) {
    Rational a = a_ * o.a_ + Rational(3) * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  QuadExt& operator/=(const QuadExt& o) {
    Rational n = o.norm();
    if (n.is_zero()) throw std::domain_error("QuadExt: division by zero");
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }
  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend QuadExt operator-(const QuadExt& x) { return {-x.a_, -x.b_}; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  [[nodiscard]] std::string str() const {
    if (b_.is_zero()) return a_.str();
    std::string s = a_.is_zero() ? "" : a_.str() + (b_.sign() > 0 ? "+" : "");
    if (b_ == Rational(1)) return s + "sqrt(3)";
    if (b_ == Rational(-1)) return s + "-sqrt(3)";
    return s + b_.str() + "*sqrt(3)";
  }
  friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.str(); }

 private:
  Rational a_{0};
  Rational b_{0};
};

inline int sign(const QuadExt& x) { return x.sign(); }
inline int quadext_sign(const QuadExt& x) { return x.sign(); }

/// Closed interval [lo, hi] with rational endpoints. Arithmetic on rationals is
/// exact, so interval operations return the exact image hull.
class RationalInterval {
 public:
  RationalInterval() = default;
  RationalInterval(Rational point) : lo_(point), hi_(std::move(point)) {}  // NOLINT
  RationalInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw std::invalid_argument("RationalInterval: lo > hi");
  }

  [[nodiscard]] const Rational& lo() const { return lo_; }
  [[nodiscard]] const Rational& hi() const { return hi_; }
  [[nodiscard]] Rational width() const { return hi_ - lo_; }
  [[nodiscard]] Rational midpoint() const { return (lo_ + hi_) / Rational(2); }
  [[nodiscard]] bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  [[nodiscard]] bool contains(const RationalInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  [[nodiscard]] bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

  friend RationalInterval operator+(const RationalInterval& x, const RationalInterval& y) {
    return {x.lo_ + y.lo_, x.hi_ + y.hi_};
  }
  friend RationalInterval operator-(const RationalInterval& x, const RationalInterval& y) {
    return {x.lo_ - y.hi_, x.hi_ - y.lo_};
  }
  friend RationalInterval operator-(const RationalInterval& x) { return {-x.hi_, -x.lo_}; }
  friend RationalInterval operator*(const RationalInterval& x, const RationalInterval& y) {
    Rational c[4] = {x.lo_ * y.lo_, x.lo_ * y.hi_, x.hi_ * y.lo_, x.hi_ * y.hi_};
    Rational lo = c[0], hi = c[0];
    for (const auto& v : c) {
      if (v < lo) lo = v;
      if (hi < v) hi = v;
    }
    return {lo, hi};
  }
  friend RationalInterval operator/(const RationalInterval& x, const RationalInterval& y) {
    if (y.contains_zero()) throw std::domain_error("RationalInterval: divisor contains zero");
    return x * RationalInterval(y.hi_.reciprocal(), y.lo_.reciprocal());
  }
  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;

  [[nodiscard]] std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

 private:
  Rational lo_{0};
  Rational hi_{0};
};

/// True iff x.lo > c. False means "not certified", not that the inequality fails.
inline bool interval_strictly_greater(const RationalInterval& x, const Rational& c) { return x.lo() > c; }

/// Enclosure of e^x for x <= 0. For |x| <= 1 the Taylor series alternates with
/// nonincreasing term magnitudes, so consecutive partial sums S_N and S_{N+1}
/// bracket e^x and the brackets are nested in N. Larger |x| is halved k times
/// and the enclosure squared back up k times.
inline RationalInterval exp_enclosure(const Rational& x, int terms) {
  if (x.sign() > 0) throw std::domain_error("exp_enclosure: only x <= 0 is supported");
  if (terms < 1) throw std::invalid_argument("exp_enclosure: terms must be >= 1");
  if (x.is_zero()) return {Rational(1), Rational(1)};
  int halvings = 0;
  Rational y = x;
  while (y < Rational(-1)) {
    y /= Rational(2);
    ++halvings;
  }
  Rational term(1), sum(0);
  for (int j = 0; j < terms; ++j) {
    sum += term;
    term = term * y / Rational(j + 1);
  }
  Rational next = sum + term;
  RationalInterval enc = sum < next ? RationalInterval(sum, next) : RationalInterval(next, sum);
  if (enc.lo().sign() < 0) enc = RationalInterval(Rational(0), enc.hi());
  for (int i = 0; i < halvings; ++i) enc = RationalInterval(enc.lo() * enc.lo(), enc.hi() * enc.hi());
  return enc;
}

/// Enclosure [lo, hi] of sqrt(c), c >= 0, with hi - lo <= 10^-digits.
inline RationalInterval sqrt_enclosure(const Rational& c, int digits = 30) {
  if (c.sign() < 0) throw std::domain_error("sqrt_enclosure: negative argument");
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // floor(sqrt(c * scale^2)) / scale <= sqrt(c) < (that + 1) / scale
  Rational scaled = c * Rational(BigInt(scale * scale));
  BigInt f = scaled.floor(), root;
  mpz_sqrt(root.get_mpz_t(), f.get_mpz_t());
  Rational lo(root, scale);
  Rational hi(root + 1, scale);
  if (lo * lo == c) hi = lo;
  return {lo, hi};
}

/// Rational enclosure of a + b*sqrt(3).
inline RationalInterval to_interval(const QuadExt& x, int digits = 30) {
  RationalInterval s3 = sqrt_enclosure(Rational(3), digits);
  return RationalInterval(x.rational_part()) + RationalInterval(x.sqrt3_part()) * s3;
}

}  // namespace smalldev
