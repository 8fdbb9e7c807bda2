// Acceptance run: one PASS/FAIL line per criterion, with timing against a fixed limit.

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include "smalldev/certificates.hpp"
#include "smalldev/distributions.hpp"
#include "smalldev/kwise.hpp"
#include "smalldev/report.hpp"

using namespace smalldev;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(const char* id, double limit_s, const std::function<Outcome()>& body) {
  report::Stopwatch clock;
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = clock.seconds();
  bool ok = o.pass && s < limit_s;
  if (!ok) ++failures;
  std::printf("%s %s  %.3fs (limit %.0fs)  %s\n", ok ? "PASS" : "FAIL", id, s, limit_s, o.detail.c_str());
  std::fflush(stdout);
}

RationalPoly P(std::initializer_list<Rational> c) { return RationalPoly(std::vector<Rational>(c)); }

Outcome ac1() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<long> pick(1, 1000);
  for (int i = 0; i < 100; ++i) {
    Rational l(pick(rng), 100), r(pick(rng), 100);
    auto d = verify_domination(l, r);
    if (!d.passed || !d.product_residual.is_zero() || !d.shifted_residual.is_zero())
      return {false, "failed at l=" + l.str() + " r=" + r.str()};
  }
  return {true, "100 seeded (l, r) in (0, 10]^2, both residuals zero"};
}

Outcome ac2() {
  std::string detail;
  for (auto c : {Rational(1), Rational(3, 2), Rational(2), Rational(3), Rational(10)}) {
    auto t = verify_theorem2(c);
    Rational want = Rational(1) - (Rational(2) * c).reciprocal();
    if (!t.certified || t.bound_value != want || t.tight_probability != want)
      return {false, "c=" + c.str() + " bound " + t.bound_value.str() + " tight " + t.tight_probability.str()};
    detail += "c=" + c.str() + "->" + want.str() + " ";
  }
  return {true, detail};
}

Outcome ac3() {
  struct Run {
    TheoremCertificate cert;
    std::size_t cases;
  };
  std::vector<Run> runs{{verify_theorem_third(), 5}, {verify_lemma_425(), 4}, {verify_lemma_negthird(), 3}};
  for (const auto& [t, n] : runs) {
    if (!t.certified || !t.coverage_ok || t.cases.size() != n) return {false, t.theorem + ": " + t.failure};
    for (const auto& c : t.cases) {
      if (!c.sturm.certified || !replay(c.sturm)) return {false, t.theorem + " " + c.case_id + ": sturm"};
      bool wants_convexity = false;
      for (const auto& spec : theorem_third_spec().cases) wants_convexity |= t.theorem == "theorem3" && spec.id == c.case_id && spec.convexity;
      for (const auto& spec : lemma_425_spec().cases) wants_convexity |= t.theorem == "lemma425" && spec.id == c.case_id && spec.convexity;
      for (const auto& spec : lemma_negthird_spec().cases)
        wants_convexity |= t.theorem == "lemma-negthird" && spec.id == c.case_id && spec.convexity;
      if (wants_convexity && !(c.convexity && c.convexity->certified && replay(*c.convexity)))
        return {false, t.theorem + " " + c.case_id + ": convexity"};
    }
  }
  auto bound = [](const TheoremSpec& th, std::size_t i) {
    return split_sqrt3(case_bound_polynomial(th.cases[i], th.delta, th.regime)).first;
  };
  auto t3 = theorem_third_spec();
  auto l3 = lemma_425_spec();
  auto l4 = lemma_negthird_spec();
  bool constants =
      bound(t3, 1) == P({Rational(27, 32), Rational(-1, 16), Rational(19, 288), Rational(1, 864), Rational(1, 2592)}) &&
      bound(l3, 1).coeff(0) == Rational(835, 972) && bound(l3, 2).coeff(0) == Rational(256957, 291600) &&
      bound(l3, 3).coeff(0) == Rational(62573, 78125) &&
      bound(l4, 1) == Rational(1, 260642) * P({218442, -24885, 37800, 9500, 10000}) &&
      bound(l4, 2) == Rational(1, 1250) * P({1016, 0, -29, 4, 3});
  if (!constants) return {false, "reference constants not reproduced"};
  return {true, "5+4+3 cases certified, coverage of [0, inf) checked, reference constants reproduced"};
}

Outcome ac4() {
  auto b = verify_beta(Rational(BigInt(1), BigInt("1000000000000")));
  bool ok = b.certified && b.beta_enclosure.width() <= Rational::parse("1e-12");
  return {ok, "beta in [" + b.beta_enclosure.lo().decimal(15) + ", " + b.beta_enclosure.hi().decimal(15) +
                  "] > 7/50, terms=" + std::to_string(b.terms)};
}

Outcome ac5() {
  const std::vector<Rational> ps{Rational(1, 6), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3)};
  const std::vector<Rational> ds{Rational(1, 4), Rational(1, 2), Rational(1)};
  int solved = 0, closed = 0, clause_only = 0;
  for (int k : {2, 3})
    for (long n = k; n <= 12; ++n)
      for (const auto& p : ps)
        for (const auto& d : ds) {
          SweepRow row;
          try {
            row = sweep_row(n, k, p, d);
          } catch (const std::invalid_argument&) {
            continue;
          }
          ++solved;
          std::string at = " at n=" + std::to_string(n) + " k=" + std::to_string(k) + " p=" + p.str() + " d=" + d.str();
          if (!row.slackness) return {false, "simplex dual / slackness" + at};
          if (row.closed_form_valid) {
            ++closed;
            if (!row.closed_form_match || !row.duality_gap_zero || !row.dual_feasible)
              return {false, "three-way equality" + at};
          }
          if (row.clause_only) {
            ++clause_only;
            if (!(*row.formula_Z > row.Z)) return {false, "clause-only point not overstated" + at};
          }
        }
  return {closed > 0, std::to_string(closed) + " closed-form instances equal three ways (" + std::to_string(solved) +
                          " LPs solved); " + std::to_string(clause_only) +
                          " k=3 points meet m <= np+1-2p but have an infeasible closed-form support and are excluded"};
}

Outcome ac6() {
  auto a = counterexample(9, Rational(1), 2);
  auto b = counterexample(10, Rational(2), 3);
  bool ok = a.probability == Rational(1, 10) && b.probability == Rational(3, 16) && a.moments_match &&
            b.moments_match && a.next_moment_differs && b.next_moment_differs;
  return {ok, "k=2 (9,1) -> " + a.probability.str() + ", k=3 (10,2) -> " + b.probability.str()};
}

Outcome ac7() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<long> count(0, 5), num(1, 4), num2(1, 8);
  for (int i = 0; i < 200; ++i) {
    std::vector<CenteredTwoPoint> vars;
    for (long k = count(rng); k > 0; --k) vars.push_back(CenteredTwoPoint::make(Rational(num(rng), 4), Rational(num2(rng), 4)));
    if (moments_of_sum(vars) != moments_of(sum_distribution(distributions_of(vars))))
      return {false, "moment mismatch at instance " + std::to_string(i)};
  }
  for (long n = 1; n <= 10; ++n)
    for (auto d : {Rational(1, 2), Rational(1), Rational(2)}) {
      auto s = spike_family(n, d);
      auto f = feige_family(n, d);
      if (!s.agrees() || s.closed_form != d / (Rational(1) + d)) return {false, "spike n=" + std::to_string(n)};
      if (!f.agrees()) return {false, "feige n=" + std::to_string(n)};
    }
  return {true, "200 seeded instances, spike and feige families n <= 10"};
}

Outcome ac8() {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  Rational floor(7, 50);
  Rational min_seen(1);
  std::size_t families = 0;
  for (long n = 1; n <= 4; ++n) {
    auto res = brute_force_min_tail(n, Rational(1), SearchGrid::default_grid(), workers);
    families += res.rows.size();
    if (res.min_tail() < floor) return {false, "tail below 7/50 at n=" + std::to_string(n)};
    min_seen = std::min(min_seen, res.min_tail());
  }
  std::vector<Rational> values{Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  Rational max_upper(0);
  std::size_t bounded = 0;
  for (long n = 1; n <= 4; ++n) {
    auto r = brute_force_max_upper_tail_bounded(n, Rational(1, 3), values);
    bounded += r.families;
    if (r.max_tail > Rational(5, 6)) return {false, "Pr[X >= 1/3] above 5/6 at n=" + std::to_string(n)};
    max_upper = std::max(max_upper, r.max_tail);
  }
  return {true, std::to_string(families) + " families min tail " + min_seen.str() + " >= 7/50; " +
                    std::to_string(bounded) + " bounded families max Pr[X >= 1/3] " + max_upper.str() + " <= 5/6"};
}

}  // namespace

int main() {
  run("AC1 domination identities", 5, ac1);
  run("AC2 kurtosis bound", 1, ac2);
  run("AC3 case certificates", 30, ac3);
  run("AC4 beta constant", 1, ac4);
  run("AC5 LP three-way equality", 60, ac5);
  run("AC6 counterexamples", 1, ac6);
  run("AC7 oracle consistency", 10, ac7);
  run("AC8 small-instance composite", 300, ac8);
  return failures == 0 ? 0 : 1;
}
