#pragma once
// Finite rational distributions, two-point variables, exact laws of
// independent sums, and the transformation pipeline used for the nonnegative
// small-deviation bound (align, merge, surplus split) plus its brute-force
// oracle.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "smalldev/exactnum.hpp"
#include "smalldev/regime.hpp"

namespace smalldev {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultAtomBudget = 1'000'000;

/// Atom budget from SMALLDEV_ATOM_BUDGET, falling back to the default.
inline std::uint64_t atom_budget_from_env() {
  if (const char* env = std::getenv("SMALLDEV_ATOM_BUDGET")) {
    try {
      long long v = std::stoll(env);
      if (v > 0) return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultAtomBudget;
}

struct Atom {
  Rational value;
  Rational prob;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Values strictly increasing, probabilities strictly positive summing to 1.
class DiscreteDistribution {
 public:
  DiscreteDistribution() : atoms_{{Rational(0), Rational(1)}} {}
  explicit DiscreteDistribution(const std::vector<Atom>& atoms) {
    std::map<Rational, Rational> merged;
    for (const auto& a : atoms) {
      if (a.prob.sign() < 0) throw std::invalid_argument("DiscreteDistribution: negative probability");
      if (a.prob.is_zero()) continue;
      merged[a.value] += a.prob;
    }
    Rational total(0);
    for (auto& [v, p] : merged) {
      total += p;
      atoms_.push_back({v, p});
    }
    if (atoms_.empty() || total != Rational(1))
      throw std::invalid_argument("DiscreteDistribution: probabilities must sum to 1 (got " + total.str() + ")");
  }

  static DiscreteDistribution point(const Rational& v) { return DiscreteDistribution({{v, Rational(1)}}); }

  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
  [[nodiscard]] std::size_t size() const { return atoms_.size(); }
  [[nodiscard]] const Rational& min_value() const { return atoms_.front().value; }
  [[nodiscard]] const Rational& max_value() const { return atoms_.back().value; }

  [[nodiscard]] Rational raw_moment(int order) const {
    Rational s(0);
    for (const auto& a : atoms_) s += a.prob * a.value.pow(order);
    return s;
  }
  [[nodiscard]] Rational mean() const { return raw_moment(1); }

  [[nodiscard]] Rational prob_below(const Rational& t) const {
    Rational s(0);
    for (const auto& a : atoms_)
      if (a.value < t) s += a.prob;
    return s;
  }
  [[nodiscard]] Rational prob_at_least(const Rational& t) const { return Rational(1) - prob_below(t); }

  [[nodiscard]] DiscreteDistribution shifted(const Rational& by) const {
    std::vector<Atom> a = atoms_;
    for (auto& x : a) x.value += by;
    return DiscreteDistribution(a);
  }
  [[nodiscard]] DiscreteDistribution scaled(const Rational& by) const {
    std::vector<Atom> a = atoms_;
    for (auto& x : a) x.value *= by;
    return DiscreteDistribution(a);
  }

  friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

 private:
  std::vector<Atom> atoms_;
};

/// Nonnegative two-point variable on {0, c} with mean mu, Pr[X = c] = mu / c.
/// c == mu == 0 encodes the constant zero variable.
struct NonnegTwoPoint {
  Rational c;
  Rational mu;

  static NonnegTwoPoint make(const Rational& c, const Rational& mu) {
    bool constant = c.is_zero() && mu.is_zero();
    if (!constant && !(mu.sign() > 0 && mu <= c))
      throw std::invalid_argument("NonnegTwoPoint: need 0 < mu <= c (c=" + c.str() + ", mu=" + mu.str() + ")");
    return {c, mu};
  }

  [[nodiscard]] bool is_constant() const { return c.is_zero() || mu == c; }
  [[nodiscard]] Rational surplus() const { return c - mu; }
  [[nodiscard]] Rational prob_top() const { return c.is_zero() ? Rational(0) : mu / c; }
  [[nodiscard]] Rational prob_zero() const { return Rational(1) - prob_top(); }
  [[nodiscard]] DiscreteDistribution distribution() const {
    if (c.is_zero()) return DiscreteDistribution::point(Rational(0));
    return DiscreteDistribution({{Rational(0), prob_zero()}, {c, prob_top()}});
  }
  friend bool operator==(const NonnegTwoPoint&, const NonnegTwoPoint&) = default;
};

/// Mean-zero two-point variable on {-a, b}, a, b > 0.
struct CenteredTwoPoint {
  Rational a;
  Rational b;

  static CenteredTwoPoint make(const Rational& a, const Rational& b) {
    if (a.sign() <= 0 || b.sign() <= 0) throw std::invalid_argument("CenteredTwoPoint: need a, b > 0");
    return {a, b};
  }

  [[nodiscard]] Rational prob_low() const { return b / (a + b); }
  [[nodiscard]] Rational prob_high() const { return a / (a + b); }
  [[nodiscard]] Rational second() const { return a * b; }
  [[nodiscard]] Rational third() const { return a * b * (b - a); }
  [[nodiscard]] Rational fourth() const { return a * b * (a * a - a * b + b * b); }
  [[nodiscard]] DiscreteDistribution distribution() const {
    return DiscreteDistribution({{-a, prob_low()}, {b, prob_high()}});
  }
};

/// Raw moments m0..m4 of a mean-zero sum.
struct MomentVector {
  Rational m0{1}, m1{0}, m2{0}, m3{0}, m4{0};
  [[nodiscard]] const Rational& variance() const { return m2; }
  friend bool operator==(const MomentVector&, const MomentVector&) = default;
};

/// Moments of a sum of 4-wise independent centered two-point variables.
inline MomentVector moments_of_sum(const std::vector<CenteredTwoPoint>& vars) {
  MomentVector m;
  Rational excess(0);
  for (const auto& v : vars) {
    Rational s2 = v.second();
    m.m2 += s2;
    m.m3 += v.third();
    excess += v.fourth() - Rational(3) * s2 * s2;
  }
  m.m4 = Rational(3) * m.m2 * m.m2 + excess;
  return m;
}

inline MomentVector moments_of(const DiscreteDistribution& d) {
  return {d.raw_moment(0), d.raw_moment(1), d.raw_moment(2), d.raw_moment(3), d.raw_moment(4)};
}

struct RegimeCheck {
  bool holds = false;
  std::string witness;  // the violated inequality when !holds
};

/// Verifies that a family of centered two-point variables satisfies the
/// hypotheses of `regime`, then certifies the moment inequalities the regime
/// promises for the sum.
inline RegimeCheck check_regime(const std::vector<CenteredTwoPoint>& vars, const MomentRegime& regime) {
  MomentVector m = moments_of_sum(vars);
  const Rational& s2 = m.m2;
  auto fail = [](std::string w) { return RegimeCheck{false, std::move(w)}; };
  auto bounded = [&]() -> std::optional<RegimeCheck> {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i].a > Rational(1) || vars[i].b > Rational(1))
        return fail("variable " + std::to_string(i) + " not bounded by 1");
    if (m.m3.abs() > s2) return fail("|m3| > m2");
    if (m.m4 > Rational(3) * s2 * s2 + s2) return fail("m4 > 3 m2^2 + m2");
    return std::nullopt;
  };
  switch (regime.kind) {
    case RegimeKind::BoundedUnit:
      if (auto r = bounded()) return *r;
      return {true, ""};
    case RegimeKind::NonnegThird:
      if (auto r = bounded()) return *r;
      if (m.m3.sign() < 0) return fail("m3 < 0");
      return {true, ""};
    case RegimeKind::Kurtosis:
      if (m.m3.sign() < 0) return fail("m3 < 0");
      if (m.m4 > regime.c * s2 * s2) return fail("m4 > c m2^2");
      return {true, ""};
    case RegimeKind::NegThirdTwoPoint: {
      if (vars.empty()) return {true, ""};
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].a > Rational(1)) return fail("a_" + std::to_string(i) + " > 1");
      if (vars[0].a < Rational(1, 16)) return fail("a_1 < 1/16");
      for (const auto& v : vars)
        if (v.b > vars[0].b) return fail("b_1 is not maximal");
      if (m.m3.sign() > 0) return fail("m3 > 0");
      Rational sum_ab2(0), sum_ab3(0);
      for (const auto& v : vars) {
        sum_ab2 += v.a * v.b * v.b;
        sum_ab3 += v.a * v.b * v.b * v.b;
      }
      // sum a b^2 <= sigma^2, b_1 <= 4 sigma, hence sum a b^3 <= b_1 sigma^2 <= 4 sigma^3.
      if (sum_ab2 > s2) return fail("sum a_i b_i^2 > sigma^2");
      if (vars[0].b * vars[0].b > Rational(16) * s2) return fail("b_1 > 4 sigma");
      if (sum_ab3 > vars[0].b * sum_ab2) return fail("sum a_i b_i^3 > b_1 sum a_i b_i^2");
      if (sum_ab3 * sum_ab3 > Rational(16) * s2 * s2 * s2) return fail("sum a_i b_i^3 > 4 sigma^3");
      Rational excess4 = m.m4 - Rational(3) * s2 * s2 - s2;  // must be <= 4 sigma^3
      if (excess4.sign() > 0 && excess4 * excess4 > Rational(16) * s2 * s2 * s2)
        return fail("m4 > 3 sigma^4 + 4 sigma^3 + sigma^2");
      if (m.m3 < -s2) return fail("m3 < -sigma^2");
      return {true, ""};
    }
  }
  return fail("unknown regime");
}

/// Law of the sum of two independent variables.
inline DiscreteDistribution convolve(const DiscreteDistribution& d1, const DiscreteDistribution& d2,
                                     std::uint64_t budget = kDefaultAtomBudget) {
  if (static_cast<std::uint64_t>(d1.size()) * d2.size() > budget)
    throw BudgetExceeded("convolution would produce more than " + std::to_string(budget) + " atom pairs");
  std::map<Rational, Rational> acc;
  for (const auto& x : d1.atoms())
    for (const auto& y : d2.atoms()) acc[x.value + y.value] += x.prob * y.prob;
  std::vector<Atom> atoms;
  atoms.reserve(acc.size());
  for (auto& [v, p] : acc) atoms.push_back({v, p});
  return DiscreteDistribution(atoms);
}

inline DiscreteDistribution sum_distribution(const std::vector<DiscreteDistribution>& vars,
                                             std::uint64_t budget = kDefaultAtomBudget) {
  DiscreteDistribution acc = DiscreteDistribution::point(Rational(0));
  for (const auto& v : vars) acc = convolve(acc, v, budget);
  return acc;
}

enum class TailSide { Below, AtLeast };

inline Rational exact_tail(const std::vector<DiscreteDistribution>& vars, const Rational& threshold, TailSide side,
                           std::uint64_t budget = kDefaultAtomBudget) {
  DiscreteDistribution s = sum_distribution(vars, budget);
  return side == TailSide::Below ? s.prob_below(threshold) : s.prob_at_least(threshold);
}

template <class Var>
std::vector<DiscreteDistribution> distributions_of(const std::vector<Var>& vars) {
  std::vector<DiscreteDistribution> out;
  out.reserve(vars.size());
  for (const auto& v : vars) out.push_back(v.distribution());
  return out;
}

// ---------------------------------------------------------------------------
// Extremal examples

struct ExtremalInstance {
  std::vector<DiscreteDistribution> vars;
  Rational threshold;
  Rational closed_form;   // the advertised probability
  Rational convolved;     // the same probability by exact convolution
  [[nodiscard]] bool agrees() const { return closed_form == convolved; }
};

/// n i.i.d. mean-1 variables on {0, n + delta}: Pr[sum < n + delta] = (1 - 1/(n+delta))^n.
inline ExtremalInstance feige_family(long n, const Rational& delta, std::uint64_t budget = kDefaultAtomBudget) {
  if (n < 1) throw std::invalid_argument("feige_family: n must be >= 1");
  if (delta.sign() <= 0) throw std::invalid_argument("feige_family: delta must be > 0");
  Rational c = Rational(n) + delta;
  ExtremalInstance inst;
  inst.vars.assign(static_cast<std::size_t>(n), NonnegTwoPoint::make(c, Rational(1)).distribution());
  inst.threshold = c;
  inst.closed_form = (Rational(1) - c.reciprocal()).pow(n);
  inst.convolved = exact_tail(inst.vars, inst.threshold, TailSide::Below, budget);
  return inst;
}

/// One mean-1 variable on {0, 1 + delta}, the other n - 1 identically 1:
/// Pr[sum < n + delta] = delta / (1 + delta).
inline ExtremalInstance spike_family(long n, const Rational& delta) {
  if (n < 1) throw std::invalid_argument("spike_family: n must be >= 1");
  if (delta.sign() <= 0) throw std::invalid_argument("spike_family: delta must be > 0");
  ExtremalInstance inst;
  inst.vars.push_back(NonnegTwoPoint::make(Rational(1) + delta, Rational(1)).distribution());
  for (long i = 1; i < n; ++i) inst.vars.push_back(DiscreteDistribution::point(Rational(1)));
  inst.threshold = Rational(n) + delta;
  inst.closed_form = delta / (Rational(1) + delta);
  inst.convolved = exact_tail(inst.vars, inst.threshold, TailSide::Below);
  return inst;
}

/// -a, 0, a with probabilities p, 1 - 2p, p (0 < p <= 1/2).
inline DiscreteDistribution symmetric_three_point(const Rational& a, const Rational& p) {
  if (a.sign() <= 0) throw std::invalid_argument("symmetric_three_point: a must be > 0");
  if (p.sign() <= 0 || p > Rational(1, 2)) throw std::invalid_argument("symmetric_three_point: need 0 < p <= 1/2");
  return DiscreteDistribution({{-a, p}, {Rational(0), Rational(1) - Rational(2) * p}, {a, p}});
}

// ---------------------------------------------------------------------------
// Support reduction and merge

/// Distribution of the rest of the sum plus the threshold T of the event
/// {X + rest < T}, both in the coordinates of the unshifted input variable.
struct ReductionContext {
  DiscreteDistribution rest = DiscreteDistribution::point(Rational(0));
  Rational threshold;
};

struct Reduction {
  NonnegTwoPoint var;     // aligned at 0
  Rational shift;         // amount subtracted from the input
  bool constant = false;  // input (or chosen reduction) is a constant
  Rational context_tail;  // Pr[rest + reduced-before-alignment < threshold]
};

/// Mean-preserving reduction to two atoms followed by alignment at 0. The
/// candidates are the extreme points of {laws on supp(v) with mean E[v]}: the
/// two-point laws on straddling atom pairs and the point mass when the mean is
/// itself an atom. The candidate with the smallest tail in `ctx` wins; ties go
/// to the lexicographically first pair.
inline Reduction align_and_reduce(const DiscreteDistribution& v, const ReductionContext& ctx,
                                  std::uint64_t budget = kDefaultAtomBudget) {
  const auto& atoms = v.atoms();
  Rational mu = v.mean();
  std::optional<Reduction> best;
  auto consider = [&](const Rational& lo, const Rational& hi) {
    DiscreteDistribution cand = (lo == hi) ? DiscreteDistribution::point(lo) : [&] {
      Rational p_hi = (mu - lo) / (hi - lo);
      return DiscreteDistribution({{lo, Rational(1) - p_hi}, {hi, p_hi}});
    }();
    Rational tail = convolve(ctx.rest, cand, budget).prob_below(ctx.threshold);
    if (best && !(tail < best->context_tail)) return;
    Reduction r;
    r.shift = cand.min_value();
    r.constant = cand.size() == 1;
    r.var = r.constant ? NonnegTwoPoint{Rational(0), Rational(0)}
                       : NonnegTwoPoint::make(cand.max_value() - r.shift, mu - r.shift);
    r.context_tail = tail;
    best = r;
  };
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].value == mu) consider(mu, mu);
    if (atoms[i].value >= mu) continue;
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      if (atoms[j].value > mu) consider(atoms[i].value, atoms[j].value);
  }
  return *best;
}

/// Default context: the variable alone against its mean plus one.
inline Reduction align_and_reduce(const DiscreteDistribution& v) {
  return align_and_reduce(v, ReductionContext{DiscreteDistribution::point(Rational(0)), v.mean() + Rational(1)});
}

struct MergeStep {
  Rational mu_small, mu_next;  // means of the merged pair
  Rational merged_mean;        // mean after reduction and alignment
  Rational tail_before, tail_after;
};

struct MergeResult {
  std::vector<NonnegTwoPoint> vars;
  std::vector<MergeStep> steps;
};

inline Rational total_mean(const std::vector<NonnegTwoPoint>& vars) {
  Rational s(0);
  for (const auto& v : vars) s += v.mu;
  return s;
}

/// Pr[sum < sum of means + delta] for a family of aligned variables.
inline Rational small_deviation_tail(const std::vector<NonnegTwoPoint>& vars, const Rational& delta,
                                     std::uint64_t budget = kDefaultAtomBudget) {
  return exact_tail(distributions_of(vars), total_mean(vars) + delta, TailSide::Below, budget);
}

/// Merge the two smallest-mean variables while mu_i < t and mu_j <= 1 - t.
/// Each merge sums the pair, then reduces and aligns it against the rest of the
/// family for the event {sum < sum of means + delta}.
inline MergeResult merge_pipeline(std::vector<NonnegTwoPoint> vars, const Rational& t,
                                  const Rational& delta = Rational(1), std::uint64_t budget = kDefaultAtomBudget) {
  if (t.sign() <= 0 || t > Rational(1, 2)) throw std::invalid_argument("merge_pipeline: need 0 < t <= 1/2");
  for (const auto& v : vars)
    if (v.mu > Rational(1)) throw std::invalid_argument("merge_pipeline: all means must be <= 1");
  MergeResult out;
  while (vars.size() >= 2) {
    std::vector<std::size_t> idx(vars.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return vars[x].mu < vars[y].mu; });
    std::size_t i = idx[0], j = idx[1];
    if (!(vars[i].mu < t && vars[j].mu <= Rational(1) - t)) break;

    MergeStep step{vars[i].mu, vars[j].mu, Rational(0), Rational(0), Rational(0)};
    step.tail_before = small_deviation_tail(vars, delta, budget);
    DiscreteDistribution merged = convolve(vars[i].distribution(), vars[j].distribution(), budget);
    std::vector<DiscreteDistribution> others;
    std::vector<NonnegTwoPoint> kept;
    for (std::size_t q = 0; q < vars.size(); ++q) {
      if (q == i || q == j) continue;
      others.push_back(vars[q].distribution());
      kept.push_back(vars[q]);
    }
    ReductionContext ctx{sum_distribution(others, budget), total_mean(vars) + delta};
    Reduction red = align_and_reduce(merged, ctx, budget);
    // Insert at the lower of the two positions so ordering stays deterministic.
    kept.insert(kept.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)), red.var);
    vars = std::move(kept);
    step.merged_mean = red.var.mu;
    step.tail_after = small_deviation_tail(vars, delta, budget);
    out.steps.push_back(step);
  }
  out.vars = std::move(vars);
  return out;
}

// ---------------------------------------------------------------------------
// Surplus split

struct SurplusSplit {
  Rational tau;
  std::size_t k = 0;
  Rational m;                       // sum of the first k means
  std::vector<std::size_t> order;   // input indices, surplus descending (stable)
  std::vector<NonnegTwoPoint> head, tail;
  Rational head_zero_probability{1};  // prod_{i<=k} Pr[X_i = 0]
  RationalInterval exp_bound;         // enclosure of e^{-1/tau}
  bool head_certified = false;        // head_zero_probability >= e^{-1/tau}
  bool head_surplus_ok = false;       // s_i >= tau m for i <= k
  bool tail_certified = false;        // s_i <= tau (m + 1) for i > k
};

inline SurplusSplit surplus_split(const std::vector<NonnegTwoPoint>& vars, const Rational& tau = Rational(25, 4),
                                  int exp_terms = 40) {
  if (tau.sign() <= 0) throw std::invalid_argument("surplus_split: tau must be > 0");
  SurplusSplit out;
  out.tau = tau;
  out.order.resize(vars.size());
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t x, std::size_t y) { return vars[x].surplus() > vars[y].surplus(); });
  Rational prefix(0);
  for (std::size_t j = 0; j < out.order.size(); ++j) {
    const auto& v = vars[out.order[j]];
    prefix += v.mu;
    if (v.surplus() >= tau * prefix) out.k = j + 1;
  }
  out.m = Rational(0);
  for (std::size_t j = 0; j < out.order.size(); ++j) {
    const auto& v = vars[out.order[j]];
    if (j < out.k) {
      out.head.push_back(v);
      out.m += v.mu;
      out.head_zero_probability *= v.prob_zero();
    } else {
      out.tail.push_back(v);
    }
  }
  out.exp_bound = exp_enclosure(-tau.reciprocal(), exp_terms);
  out.head_certified = out.k == 0 || out.head_zero_probability >= out.exp_bound.hi();
  out.head_surplus_ok = std::all_of(out.head.begin(), out.head.end(),
                                    [&](const NonnegTwoPoint& v) { return v.surplus() >= tau * out.m; });
  out.tail_certified = std::all_of(out.tail.begin(), out.tail.end(), [&](const NonnegTwoPoint& v) {
    return v.mu <= Rational(1) && v.surplus() <= tau * (out.m + Rational(1));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracle

/// Candidate (c, mu) pairs for nonnegative two-point variables; pairs with
/// mu > c or mu <= 0 or mu > 1 are skipped.
struct SearchGrid {
  std::vector<Rational> c_values;
  std::vector<Rational> mu_values;

  [[nodiscard]] std::vector<NonnegTwoPoint> variables() const {
    std::vector<NonnegTwoPoint> out;
    for (const auto& c : c_values)
      for (const auto& mu : mu_values)
        if (mu.sign() > 0 && mu <= c && mu <= Rational(1)) out.push_back(NonnegTwoPoint::make(c, mu));
    return out;
  }

  static SearchGrid default_grid() {
    SearchGrid g;
    for (auto s : {"1/2", "1", "3/2", "2", "5/2", "3", "4", "5", "6", "8"}) g.c_values.push_back(Rational::parse(s));
    for (auto s : {"1/4", "1/2", "3/4", "1"}) g.mu_values.push_back(Rational::parse(s));
    return g;
  }

  /// lo, lo + step, ..., up to hi inclusive.
  static std::vector<Rational> range(const Rational& lo, const Rational& hi, const Rational& step) {
    if (step.sign() <= 0) throw std::invalid_argument("SearchGrid::range: step must be > 0");
    std::vector<Rational> out;
    for (Rational x = lo; x <= hi; x += step) out.push_back(x);
    return out;
  }
};

/// All multisets of size n drawn from {0, ..., g - 1}, lexicographic.
inline std::vector<std::vector<std::size_t>> multisets(std::size_t g, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (g == 0) return out;
  std::vector<std::size_t> cur(n, 0);
  while (true) {
    out.push_back(cur);
    std::size_t pos = n;
    while (pos > 0 && cur[pos - 1] == g - 1) --pos;
    if (pos == 0) break;
    std::size_t v = cur[pos - 1] + 1;
    for (std::size_t q = pos - 1; q < n; ++q) cur[q] = v;
  }
  return out;
}

struct SearchRow {
  std::vector<std::size_t> family;  // indices into the grid variables
  Rational tail;
};

struct SearchResult {
  std::vector<NonnegTwoPoint> grid_vars;
  std::vector<SearchRow> rows;  // enumeration order
  std::size_t best = 0;         // row index of the minimum (first on ties)
  [[nodiscard]] const Rational& min_tail() const { return rows.at(best).tail; }
  [[nodiscard]] std::vector<NonnegTwoPoint> best_family() const {
    std::vector<NonnegTwoPoint> out;
    for (auto i : rows.at(best).family) out.push_back(grid_vars[i]);
    return out;
  }
};

/// Exhaustive minimum of Pr[sum < sum of means + delta] over all size-n
/// families drawn from the grid. Rows are computed in parallel into fixed
/// slots, so the output does not depend on the worker count. The budget caps
/// both the number of families and the atoms of each convolution.
inline SearchResult brute_force_min_tail(long n, const Rational& delta, const SearchGrid& grid, unsigned workers = 1,
                                         std::uint64_t budget = kDefaultAtomBudget) {
  if (n < 1) throw std::invalid_argument("brute_force_min_tail: n must be >= 1");
  SearchResult res;
  res.grid_vars = grid.variables();
  if (res.grid_vars.empty()) throw std::invalid_argument("brute_force_min_tail: empty grid");
  // C(g + n - 1, n) families; check the count before enumerating.
  {
    double count = 1;
    for (long i = 1; i <= n; ++i)
      count = count * static_cast<double>(res.grid_vars.size() + static_cast<std::size_t>(i) - 1) / i;
    if (count > static_cast<double>(budget))
      throw BudgetExceeded("search grid has more than " + std::to_string(budget) + " families");
  }
  auto families = multisets(res.grid_vars.size(), static_cast<std::size_t>(n));
  res.rows.resize(families.size());
  std::vector<DiscreteDistribution> dists = distributions_of(res.grid_vars);
  auto work = [&](unsigned w, unsigned stride) {
    for (std::size_t f = w; f < families.size(); f += stride) {
      std::vector<DiscreteDistribution> fam;
      Rational mean_sum(0);
      for (auto i : families[f]) {
        fam.push_back(dists[i]);
        mean_sum += res.grid_vars[i].mu;
      }
      res.rows[f] = {families[f], exact_tail(fam, mean_sum + delta, TailSide::Below, budget)};
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          work(w, workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (std::size_t f = 1; f < res.rows.size(); ++f)
    if (res.rows[f].tail < res.rows[res.best].tail) res.best = f;
  return res;
}

/// Exhaustive maximum of Pr[sum >= delta] over size-n families of centered
/// two-point variables {-a, b} with a, b drawn from `values` (all <= 1).
struct BoundedSearchResult {
  Rational max_tail;
  std::vector<CenteredTwoPoint> argmax;
  std::size_t families = 0;
};

inline BoundedSearchResult brute_force_max_upper_tail_bounded(long n, const Rational& delta,
                                                               const std::vector<Rational>& values) {
  std::vector<CenteredTwoPoint> grid;
  for (const auto& a : values)
    for (const auto& b : values) grid.push_back(CenteredTwoPoint::make(a, b));
  std::vector<DiscreteDistribution> dists = distributions_of(grid);
  BoundedSearchResult res{Rational(-1), {}, 0};
  for (const auto& fam : multisets(grid.size(), static_cast<std::size_t>(n))) {
    std::vector<DiscreteDistribution> ds;
    for (auto i : fam) ds.push_back(dists[i]);
    Rational t = exact_tail(ds, delta, TailSide::AtLeast);
    ++res.families;
    if (t > res.max_tail) {
      res.max_tail = t;
      res.argmax.clear();
      for (auto i : fam) res.argmax.push_back(grid[i]);
    }
  }
  return res;
}

}  // namespace smalldev
