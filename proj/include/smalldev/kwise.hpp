#pragma once
// Moment linear program for sums of k-wise independent Bernoulli(p) variables:
//   maximize   sum_{r >= m} p_r
//   subject to sum_r r^i p_r = E[Bin(n, p)^i],  i = 0..k,   p_r >= 0
// with m = ceil(np + delta). Solved exactly by a two-phase simplex; the dual
// multipliers are the coefficients of the optimal polynomial Q.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smalldev/distributions.hpp"
#include "smalldev/exactnum.hpp"
#include "smalldev/poly.hpp"

namespace smalldev {

// ---------------------------------------------------------------------------
// Exact simplex

enum class LPStatus { Optimal, Infeasible, Unbounded };

inline std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "?";
}

struct SimplexResult {
  LPStatus status = LPStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
  std::vector<Rational> dual;  // one multiplier per equality row
  int pivots = 0;
};

/// maximize c.x subject to A x = b, x >= 0, in exact arithmetic. Both phases
/// use Bland's rule (lowest eligible index enters, lowest basic index leaves
/// on ratio ties), so the method terminates on degenerate problems.
inline SimplexResult simplex_maximize(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                                      const std::vector<Rational>& c) {
  const std::size_t rows = A.size();
  const std::size_t cols = c.size();
  for (const auto& row : A)
    if (row.size() != cols) throw std::invalid_argument("simplex_maximize: ragged constraint matrix");
  if (b.size() != rows) throw std::invalid_argument("simplex_maximize: rhs size mismatch");

  // Tableau columns: structural, artificial, rhs.
  const std::size_t width = cols + rows + 1;
  std::vector<std::vector<Rational>> T(rows, std::vector<Rational>(width, Rational(0)));
  std::vector<int> row_sign(rows, 1);
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    row_sign[i] = b[i].sign() < 0 ? -1 : 1;
    Rational s(row_sign[i]);
    for (std::size_t j = 0; j < cols; ++j) T[i][j] = s * A[i][j];
    T[i][cols + i] = Rational(1);
    T[i][width - 1] = s * b[i];
    basis[i] = cols + i;
  }
  SimplexResult res;

  auto pivot = [&](std::size_t pr, std::size_t pc) {
    Rational inv = T[pr][pc].reciprocal();
    for (auto& v : T[pr]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr || T[i][pc].is_zero()) continue;
      Rational f = T[i][pc];
      for (std::size_t j = 0; j < width; ++j)
        if (!T[pr][j].is_zero()) T[i][j] -= f * T[pr][j];
    }
    basis[pr] = pc;
    ++res.pivots;
  };

  // Returns false if unbounded.
  auto run = [&](const std::vector<Rational>& cost, std::size_t eligible_cols) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < eligible_cols && !enter; ++j) {
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < rows; ++i)
          if (!T[i][j].is_zero()) reduced -= cost[basis[i]] * T[i][j];
        if (reduced.sign() > 0) enter = j;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows; ++i) {
        if (T[i][*enter].sign() <= 0) continue;
        Rational ratio = T[i][width - 1] / T[i][*enter];
        if (!leave || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[*leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  };

  // Phase 1: maximize -(sum of artificials).
  std::vector<Rational> phase1(width - 1, Rational(0));
  for (std::size_t i = 0; i < rows; ++i) phase1[cols + i] = Rational(-1);
  run(phase1, width - 1);
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] >= cols && T[i][width - 1].sign() != 0) {
      res.status = LPStatus::Infeasible;
      return res;
    }
  // Drive zero-level artificials out where a structural pivot exists.
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < cols) continue;
    for (std::size_t j = 0; j < cols; ++j)
      if (!T[i][j].is_zero()) {
        pivot(i, j);
        break;
      }
  }

  // Phase 2.
  std::vector<Rational> cost(width - 1, Rational(0));
  for (std::size_t j = 0; j < cols; ++j) cost[j] = c[j];
  if (!run(cost, cols)) {
    res.status = LPStatus::Unbounded;
    return res;
  }
  res.status = LPStatus::Optimal;
  res.x.assign(cols, Rational(0));
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] < cols) res.x[basis[i]] = T[i][width - 1];
  res.value = Rational(0);
  for (std::size_t j = 0; j < cols; ++j) res.value += c[j] * res.x[j];
  // y = c_B B^{-1}; B^{-1} sits in the artificial block of the tableau.
  res.dual.assign(rows, Rational(0));
  for (std::size_t r = 0; r < rows; ++r) {
    Rational y(0);
    for (std::size_t i = 0; i < rows; ++i) y += cost[basis[i]] * T[i][cols + r];
    res.dual[r] = Rational(row_sign[r]) * y;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Binomial moments

inline Rational binomial_coefficient(long n, long r) {
  if (r < 0 || r > n) return Rational(0);
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return Rational(out);
}

/// Stirling numbers of the second kind S(i, j), 0 <= j <= i.
inline std::vector<Rational> stirling2_row(int i) {
  std::vector<std::vector<Rational>> s(static_cast<std::size_t>(i) + 1);
  s[0] = {Rational(1)};
  for (int a = 1; a <= i; ++a) {
    s[a].assign(static_cast<std::size_t>(a) + 1, Rational(0));
    for (int b = 1; b <= a; ++b) {
      Rational prev_same = b < a ? s[a - 1][b] : Rational(0);
      s[a][b] = Rational(b) * prev_same + s[a - 1][b - 1];
    }
  }
  return s[i];
}

/// E[Bin(n, p)^i] = sum_j S(i, j) n (n-1) ... (n-j+1) p^j.
inline Rational binomial_moment(long n, const Rational& p, int i) {
  if (i < 0) throw std::invalid_argument("binomial_moment: order must be >= 0");
  auto s = stirling2_row(i);
  Rational total(0), falling(1), pj(1);
  for (int j = 0; j <= i; ++j) {
    if (j > 0) {
      falling *= Rational(n - j + 1);
      pj *= p;
    }
    total += s[static_cast<std::size_t>(j)] * falling * pj;
  }
  return total;
}

/// Pr[Bin(n, p) >= m].
inline Rational binomial_upper_tail(long n, const Rational& p, long m) {
  Rational s(0);
  for (long r = std::max(0L, m); r <= n; ++r)
    s += binomial_coefficient(n, r) * p.pow(r) * (Rational(1) - p).pow(n - r);
  return s;
}

inline DiscreteDistribution binomial_distribution(long n, const Rational& p) {
  std::vector<Atom> atoms;
  for (long r = 0; r <= n; ++r)
    atoms.push_back({Rational(r), binomial_coefficient(n, r) * p.pow(r) * (Rational(1) - p).pow(n - r)});
  return DiscreteDistribution(atoms);
}

// ---------------------------------------------------------------------------
// The moment LP

struct KwiseMomentLP {
  long n = 1;
  long k = 1;
  Rational p;
  Rational delta;
  long m = 1;  // ceil(np + delta)

  static KwiseMomentLP make(long n, long k, const Rational& p, const Rational& delta) {
    if (n < 1) throw std::invalid_argument("KwiseMomentLP: n must be >= 1");
    if (k < 1 || k > n) throw std::invalid_argument("KwiseMomentLP: need 1 <= k <= n");
    if (p.sign() <= 0 || p >= Rational(1)) throw std::invalid_argument("KwiseMomentLP: need 0 < p < 1");
    if (delta.sign() <= 0) throw std::invalid_argument("KwiseMomentLP: delta must be > 0");
    BigInt m = (Rational(n) * p + delta).ceil();
    if (m > n) throw std::invalid_argument("KwiseMomentLP: m = ceil(np + delta) exceeds n; the event is empty");
    return {n, k, p, delta, m.get_si()};
  }

  [[nodiscard]] std::vector<Rational> moments() const {
    std::vector<Rational> out;
    for (int i = 0; i <= k; ++i) out.push_back(binomial_moment(n, p, i));
    return out;
  }
};

struct LPSolution {
  LPStatus status = LPStatus::Optimal;
  Rational Z;
  std::vector<std::pair<long, Rational>> support;  // (r, p_r) with p_r > 0
  std::optional<RationalPoly> dual;                // optimal Q from the simplex multipliers
  int pivots = 0;

  [[nodiscard]] Rational prob_at(long r) const {
    for (const auto& [rr, pr] : support)
      if (rr == r) return pr;
    return Rational(0);
  }
};

inline LPSolution simplex_solve(const KwiseMomentLP& lp) {
  std::vector<std::vector<Rational>> A;
  for (long i = 0; i <= lp.k; ++i) {
    std::vector<Rational> row;
    for (long r = 0; r <= lp.n; ++r) row.push_back(Rational(r).pow(i));
    A.push_back(std::move(row));
  }
  std::vector<Rational> c;
  for (long r = 0; r <= lp.n; ++r) c.push_back(Rational(r >= lp.m ? 1 : 0));
  SimplexResult sr = simplex_maximize(A, lp.moments(), c);
  if (sr.status != LPStatus::Optimal)
    throw std::logic_error("simplex_solve: moment LP reported " + to_string(sr.status) +
                           "; the binomial law itself is feasible and probabilities are bounded");
  LPSolution sol;
  sol.status = sr.status;
  sol.Z = sr.value;
  sol.pivots = sr.pivots;
  for (long r = 0; r <= lp.n; ++r)
    if (!sr.x[static_cast<std::size_t>(r)].is_zero()) sol.support.emplace_back(r, sr.x[static_cast<std::size_t>(r)]);
  sol.dual = RationalPoly(sr.dual);
  return sol;
}

class OutOfClosedFormRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Gauss-Jordan solve of a square exact system.
inline std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> M, std::vector<Rational> rhs) {
  const std::size_t n = M.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && M[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("solve_linear: singular system");
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    Rational inv = M[col][col].reciprocal();
    for (auto& v : M[col]) v *= inv;
    rhs[col] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || M[i][col].is_zero()) continue;
      Rational f = M[i][col];
      for (std::size_t j = 0; j < n; ++j) M[i][j] -= f * M[col][j];
      rhs[i] -= f * rhs[col];
    }
  }
  return rhs;
}

inline void push_positive(LPSolution& s, long r, const Rational& pr) {
  if (pr.sign() < 0)
    throw OutOfClosedFormRange("closed form: weight at " + std::to_string(r) + " is negative (" + pr.str() +
                               "); the support is not primal feasible here");
  if (!pr.is_zero()) s.support.emplace_back(r, pr);
}

}  // namespace detail

/// k = 2 optimum on {0, m, n}, valid while m <= np + 1 - p.
inline LPSolution closed_form_k2(long n, const Rational& p, const Rational& delta) {
  auto lp = KwiseMomentLP::make(n, 2, p, delta);
  const Rational N(n), M(lp.m), one(1);
  if (M > N * p + one - p) throw OutOfClosedFormRange("closed_form_k2: requires m <= np + 1 - p");
  LPSolution s;
  detail::push_positive(s, 0, (one - p) * (M - N * p + p) / M);
  detail::push_positive(s, lp.m, p * (one - p) * N * (N - one) / (M * (N - M)));
  detail::push_positive(s, n, p * (N * p - M + one - p) / (N - M));
  s.Z = p * (N + M - N * p - one + p) / M;
  return s;
}

/// k = 3 optimum on {0, m, n-1, n}, valid while m <= np + 1 - 2p and the
/// probabilities solving the four moment equations on that support are
/// nonnegative. The first condition alone does not imply the second, e.g.
/// (n, p, delta) = (4, 1/6, 1/4), where the formula overstates the optimum.
inline LPSolution closed_form_k3(long n, const Rational& p, const Rational& delta) {
  auto lp = KwiseMomentLP::make(n, 3, p, delta);
  const Rational N(n), M(lp.m), one(1), two(2);
  if (M > N * p + one - two * p) throw OutOfClosedFormRange("closed_form_k3: requires m <= np + 1 - 2p");
  const std::vector<long> pts{0, lp.m, n - 1, n};
  std::vector<std::vector<Rational>> V(4, std::vector<Rational>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) V[i][j] = Rational(pts[j]).pow(i);
  auto probs = detail::solve_linear(V, lp.moments());
  LPSolution s;
  for (int j = 0; j < 4; ++j) detail::push_positive(s, pts[j], probs[j]);
  s.Z = p * ((N - two) * (one - p) * (one - p) + M * (two - p)) / M;
  if (s.Z != probs[1] + probs[2] + probs[3])
    throw std::logic_error("closed_form_k3: objective formula disagrees with the solved support");
  return s;
}

struct DualCertificate {
  int k = 2;
  RationalPoly Q;
  bool feasible = false;
  std::optional<long> violation;  // first integer where a constraint fails
  Rational value;                 // E[Q(Bin(n, p))]
  Rational closed_form_Z;
  bool zero_gap = false;
  std::optional<RationalPoly> printed;  // k = 3: the closed-form cubic, stray factor read as 1
  bool printed_agrees = true;
};

/// Is Q(i) >= 0 below m and Q(j) >= 1 from m to n? Returns the first violation.
inline std::optional<long> dual_violation(const RationalPoly& Q, long n, long m) {
  for (long i = 0; i <= n; ++i) {
    Rational v = Q(Rational(i));
    if (i < m ? v.sign() < 0 : v < Rational(1)) return i;
  }
  return std::nullopt;
}

/// E[Q(Bin(n, p))] from the binomial moments.
inline Rational binomial_expectation(const RationalPoly& Q, long n, const Rational& p) {
  Rational s(0);
  for (std::size_t i = 0; i < Q.coefficients().size(); ++i)
    s += Q.coefficients()[i] * binomial_moment(n, p, static_cast<int>(i));
  return s;
}

/// Unique polynomial of degree < pts.size() through the given points.
inline RationalPoly interpolate(const std::vector<std::pair<Rational, Rational>>& pts) {
  RationalPoly out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    RationalPoly basis{Rational(1)};
    Rational denom(1);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      basis = basis * RationalPoly{-pts[j].first, Rational(1)};
      denom *= pts[i].first - pts[j].first;
    }
    out += (pts[i].second / denom) * basis;
  }
  return out;
}

/// f(x) = ((m+n)x - x^2)/(mn) for k = 2; for k = 3 the cubic g with g(0) = 0
/// and g = 1 at m, n-1, n, rebuilt by interpolation and compared with the
/// closed-form expression ((n^2+2mn-n-m)x - (2n+m-1)x^2 + x^3)/(n(n-1)m).
inline DualCertificate dual_certificate(long n, const Rational& p, const Rational& delta, int k) {
  if (k != 2 && k != 3) throw std::invalid_argument("dual_certificate: k must be 2 or 3");
  LPSolution closed = k == 2 ? closed_form_k2(n, p, delta) : closed_form_k3(n, p, delta);
  long m = KwiseMomentLP::make(n, k, p, delta).m;
  const Rational N(n), M(m), one(1);
  DualCertificate d;
  d.k = k;
  if (k == 2) {
    d.Q = (M * N).reciprocal() * RationalPoly{Rational(0), M + N, -one};
  } else {
    d.Q = interpolate({{Rational(0), Rational(0)}, {M, one}, {N - one, one}, {N, one}});
    RationalPoly printed{Rational(0), N * N + Rational(2) * M * N - N - M, -(Rational(2) * N + M - one), one};
    d.printed = (N * (N - one) * M).reciprocal() * printed;
    d.printed_agrees = *d.printed == d.Q;
  }
  d.violation = dual_violation(d.Q, n, m);
  d.feasible = !d.violation;
  d.value = binomial_expectation(d.Q, n, p);
  d.closed_form_Z = closed.Z;
  d.zero_gap = d.value == closed.Z;
  return d;
}

/// Every primal support atom r has Q(r) equal to its objective coefficient.
inline bool complementary_slackness(const LPSolution& primal, const RationalPoly& Q, long m) {
  for (const auto& [r, pr] : primal.support)
    if (Q(Rational(r)) != Rational(r >= m ? 1 : 0)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Counterexamples

struct KwiseCounterexample {
  int k = 2;
  long n = 0;
  Rational delta;
  Rational p;
  long m = 0;
  DiscreteDistribution sum;     // law of S on {0..n}
  DiscreteDistribution scaled;  // law of S / p: mean-1 summands
  Rational probability;         // Pr[S / p < n + delta]
  Rational formula;             // delta/(n+delta) or (delta+1)^2/((delta+2)(n+delta))
  bool moments_match = false;   // orders 0..k equal those of Bin(n, p)
  bool next_moment_differs = false;
};

/// Extremal law of the sum of n pairwise (k = 2) or 3-wise (k = 3) independent
/// mean-1 variables X_i = B_i / p, with p = 1/(delta + k - 1).
inline KwiseCounterexample counterexample(long n, const Rational& delta, int k) {
  if (k != 2 && k != 3) throw std::invalid_argument("counterexample: k must be 2 or 3");
  if (delta.sign() <= 0) throw std::invalid_argument("counterexample: delta must be > 0");
  if (n < k) throw std::invalid_argument("counterexample: need n >= k");
  Rational N(n);
  Rational denom = delta + Rational(k - 1);
  Rational ratio = (N + delta) / denom;
  if (!ratio.is_integer())
    throw std::invalid_argument("counterexample: (n+delta)/(delta+" + std::to_string(k - 1) + ") must be an integer");
  KwiseCounterexample ce;
  ce.k = k;
  ce.n = n;
  ce.delta = delta;
  ce.p = denom.reciprocal();
  Rational lp_delta = delta * ce.p;
  LPSolution sol = k == 2 ? closed_form_k2(n, ce.p, lp_delta) : closed_form_k3(n, ce.p, lp_delta);
  ce.m = KwiseMomentLP::make(n, k, ce.p, lp_delta).m;
  std::vector<Atom> atoms;
  for (const auto& [r, pr] : sol.support) atoms.push_back({Rational(r), pr});
  ce.sum = DiscreteDistribution(atoms);
  ce.scaled = ce.sum.scaled(denom);
  ce.probability = ce.scaled.prob_below(N + delta);
  ce.formula = k == 2 ? delta / (N + delta)
                      : (delta + Rational(1)) * (delta + Rational(1)) / ((delta + Rational(2)) * (N + delta));
  ce.moments_match = true;
  for (int i = 0; i <= k; ++i) ce.moments_match = ce.moments_match && ce.sum.raw_moment(i) == binomial_moment(n, ce.p, i);
  ce.next_moment_differs = ce.sum.raw_moment(k + 1) != binomial_moment(n, ce.p, k + 1);
  return ce;
}

// ---------------------------------------------------------------------------
// Sweep

struct SweepRow {
  long n = 0;
  int k = 0;
  Rational p, delta;
  long m = 0;
  Rational Z;
  bool closed_form_valid = false;
  bool closed_form_match = false;
  bool duality_gap_zero = false;
  bool dual_feasible = false;
  bool slackness = false;  // against both the closed-form dual and the simplex dual
  // The stated validity clause holds but the closed-form support is infeasible.
  bool clause_only = false;
  std::optional<Rational> formula_Z;  // printed Z, reported when clause_only
};

inline SweepRow sweep_row(long n, int k, const Rational& p, const Rational& delta) {
  auto lp = KwiseMomentLP::make(n, k, p, delta);
  LPSolution sol = simplex_solve(lp);
  SweepRow row;
  row.n = n;
  row.k = k;
  row.p = p;
  row.delta = delta;
  row.m = lp.m;
  row.Z = sol.Z;
  bool simplex_dual_ok = sol.dual && !dual_violation(*sol.dual, n, lp.m) &&
                         binomial_expectation(*sol.dual, n, p) == sol.Z &&
                         complementary_slackness(sol, *sol.dual, lp.m);
  row.slackness = simplex_dual_ok;
  if (k == 2 || k == 3) {
    try {
      LPSolution closed = k == 2 ? closed_form_k2(n, p, delta) : closed_form_k3(n, p, delta);
      DualCertificate d = dual_certificate(n, p, delta, k);
      row.closed_form_valid = true;
      row.closed_form_match = closed.Z == sol.Z;
      row.dual_feasible = d.feasible;
      row.duality_gap_zero = d.zero_gap && d.value == sol.Z;
      row.slackness = simplex_dual_ok && complementary_slackness(sol, d.Q, lp.m) &&
                      complementary_slackness(closed, d.Q, lp.m);
    } catch (const OutOfClosedFormRange&) {
      const Rational N(n), M(lp.m), one(1), two(2);
      if (k == 3 && M <= N * p + one - two * p) {
        row.clause_only = true;
        row.formula_Z = p * ((N - two) * (one - p) * (one - p) + M * (two - p)) / M;
      }
    }
  }
  return row;
}

}  // namespace smalldev
