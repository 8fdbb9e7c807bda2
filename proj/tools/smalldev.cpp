// smalldev: certify the small-deviation bounds, solve the k-wise moment LP,
// build extremal examples and search small families exhaustively.
//
// Exit status: 0 certified, 1 falsified, 2 invalid input.

#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smalldev/certificates.hpp"
#include "smalldev/distributions.hpp"
#include "smalldev/kwise.hpp"
#include "smalldev/report.hpp"

using namespace smalldev;
using report::json;
using report::Report;
using report::Status;

namespace {

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Rational arg_rational(const std::string& s, const std::string& what) {
  try {
    return Rational::parse(s);
  } catch (const std::exception&) {
    throw InvalidInput(what + ": not a rational number: '" + s + "'");
  }
}

long arg_integer(const std::string& s, const std::string& what) {
  Rational r = arg_rational(s, what);
  if (!r.is_integer()) throw InvalidInput(what + ": expected an integer, got '" + s + "'");
  return r.num().get_si();
}

std::vector<Rational> rational_list(const std::string& s, const std::string& what) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(arg_rational(item, what));
  if (out.empty()) throw InvalidInput(what + ": empty list");
  return out;
}

/// "c=LO..HI step S", "c=LO..HI" (step 1) or "c=v1,v2,...".
std::vector<Rational> parse_grid(const std::string& spec) {
  static const std::regex range(R"(\s*c\s*=\s*([^\s.]+)\s*\.\.\s*([^\s]+)\s*(?:step\s+([^\s]+))?\s*)");
  static const std::regex list(R"(\s*c\s*=\s*([^\s]+)\s*)");
  std::smatch m;
  if (std::regex_match(spec, m, range)) {
    Rational step = m[3].matched ? arg_rational(m[3], "--grid step") : Rational(1);
    if (step.sign() <= 0) throw InvalidInput("--grid: step must be positive");
    return SearchGrid::range(arg_rational(m[1], "--grid"), arg_rational(m[2], "--grid"), step);
  }
  if (std::regex_match(spec, m, list)) return rational_list(m[1], "--grid");
  throw InvalidInput("--grid: expected 'c=LO..HI step S' or 'c=v1,v2,...'");
}

Status status_of(bool ok) { return ok ? Status::Certified : Status::Falsified; }

// ---------------------------------------------------------------------------
// certify

struct CertifyArgs {
  std::string target;
  std::vector<std::string> c_values{"3"};
  std::string delta = "4/25";
  int count = 100;
  std::uint64_t seed = 20240601;
};

json run_domination(int count, std::uint64_t seed, bool& ok) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(1, 1000);
  json cases = json::array();
  int passed = 0;
  for (int i = 0; i < count; ++i) {
    Rational ell(num(rng), 100), r(num(rng), 100);
    DominationProof d = verify_domination(ell, r);
    if (d.passed) {
      ++passed;
    } else {
      cases.push_back(report::domination_proof(d));
    }
  }
  ok = passed == count;
  return {{"count", count}, {"seed", seed}, {"passed", passed}, {"failures", cases}, {"certified", ok}};
}

Report cmd_certify(const CertifyArgs& a) {
  Report rep;
  rep.command = "certify";
  rep.inputs = {{"target", a.target}};
  const bool all = a.target == "all";
  json certs = json::array();
  bool ok = true;
  auto add = [&](const std::string& name, json j, bool good) {
    j["verifier"] = name;
    certs.push_back(std::move(j));
    ok = ok && good;
  };
  if (all || a.target == "theorem2") {
    rep.inputs["c"] = a.c_values;
    for (const auto& cs : a.c_values) {
      Rational c = arg_rational(cs, "--c");
      if (c < Rational(1)) throw InvalidInput("--c: the kurtosis bound needs c >= 1");
      auto t = verify_theorem2(c);
      add("theorem2", report::theorem2_certificate(t), t.certified);
    }
  }
  if (all || a.target == "theorem3") {
    auto t = verify_theorem_third();
    add("theorem3", report::theorem_certificate(t), t.certified);
  }
  if (all || a.target == "lemma425") {
    Rational d = arg_rational(a.delta, "--delta");
    if (d.sign() < 0) throw InvalidInput("--delta must be >= 0");
    rep.inputs["delta"] = d.str();
    auto t = verify_lemma_425(d);
    add("lemma425", report::theorem_certificate(t), t.certified);
  }
  if (all || a.target == "lemma-negthird") {
    auto t = verify_lemma_negthird();
    add("lemma-negthird", report::theorem_certificate(t), t.certified);
  }
  if (all || a.target == "beta") {
    auto b = verify_beta();
    add("beta", report::beta_certificate(b), b.certified);
  }
  if (all || a.target == "domination") {
    if (a.count < 1) throw InvalidInput("--count must be >= 1");
    rep.inputs["count"] = a.count;
    rep.inputs["seed"] = a.seed;
    bool good = false;
    json d = run_domination(a.count, a.seed, good);
    add("domination", d, good);
  }
  rep.result = certs.size() == 1 ? certs[0] : json{{"certificates", certs}};
  rep.status = status_of(ok);
  return rep;
}

// ---------------------------------------------------------------------------
// lp

struct LpArgs {
  std::string n, k, p, delta;
  bool closed_form = false;
  bool dual = false;
  bool sweep = false;
  long max_n = 12;
};

Report lp_sweep(const LpArgs& a) {
  Report rep;
  rep.command = "lp";
  std::vector<int> ks{2, 3};
  if (!a.k.empty()) ks = {static_cast<int>(arg_integer(a.k, "k"))};
  long max_n = a.n.empty() ? a.max_n : arg_integer(a.n, "n");
  const std::vector<Rational> ps{Rational(1, 6), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3)};
  const std::vector<Rational> deltas{Rational(1, 4), Rational(1, 2), Rational(1)};
  rep.inputs = {{"sweep", true}, {"max_n", max_n}, {"k", ks}};
  report::Table t{{"n", "k", "p", "delta", "m", "Z_exact", "Z_decimal", "closed_form_valid", "closed_form_match",
                   "duality_gap_zero", "dual_feasible", "complementary_slackness", "clause_only", "formula_Z"},
                  {}};
  auto yn = [](bool b) { return std::string(b ? "true" : "false"); };
  long solved = 0, closed = 0;
  json failures = json::array();
  json clause_only = json::array();
  for (int k : ks)
    for (long n = std::max<long>(1, k); n <= max_n; ++n)
      for (const auto& p : ps)
        for (const auto& d : deltas) {
          SweepRow row;
          try {
            row = sweep_row(n, k, p, d);
          } catch (const std::invalid_argument&) {
            continue;  // empty event for this (n, p, delta)
          }
          ++solved;
          bool good = row.slackness;
          if (row.closed_form_valid) {
            ++closed;
            good = good && row.closed_form_match && row.duality_gap_zero && row.dual_feasible;
          }
          if (row.clause_only) {
            // The printed formula must then overstate the true optimum.
            good = good && *row.formula_Z > row.Z;
            clause_only.push_back({{"n", n}, {"k", k}, {"p", p.str()}, {"delta", d.str()}, {"m", row.m},
                                   {"Z", row.Z.str()}, {"formula_Z", row.formula_Z->str()}});
          }
          if (!good) failures.push_back({{"n", n}, {"k", k}, {"p", p.str()}, {"delta", d.str()}});
          t.rows.push_back({std::to_string(n), std::to_string(k), p.str(), d.str(), std::to_string(row.m),
                            row.Z.str(), row.Z.decimal(12), yn(row.closed_form_valid), yn(row.closed_form_match),
                            yn(row.duality_gap_zero), yn(row.dual_feasible), yn(row.slackness), yn(row.clause_only),
                            row.formula_Z ? row.formula_Z->str() : std::string()});
        }
  rep.result = {{"instances", solved},
                {"closed_form_instances", closed},
                {"clause_only_instances", clause_only},
                {"failures", failures}};
  rep.table = std::move(t);
  rep.status = status_of(failures.empty());
  return rep;
}

Report cmd_lp(const LpArgs& a) {
  if (a.sweep) return lp_sweep(a);
  if (a.n.empty() || a.k.empty() || a.p.empty() || a.delta.empty())
    throw InvalidInput("lp: expected n k p delta (or --sweep)");
  long n = arg_integer(a.n, "n");
  long k = arg_integer(a.k, "k");
  Rational p = arg_rational(a.p, "p"), delta = arg_rational(a.delta, "delta");
  KwiseMomentLP lp = [&] {
    try {
      return KwiseMomentLP::make(n, k, p, delta);
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(e.what());
    }
  }();
  Report rep;
  rep.command = "lp";
  rep.inputs = {{"n", n}, {"k", k}, {"p", p.str()}, {"delta", delta.str()},
                {"closed_form", a.closed_form}, {"dual", a.dual}};
  LPSolution sol = simplex_solve(lp);
  rep.result = {{"instance", report::lp_instance(lp)}, {"solution", report::lp_solution(sol)}};
  bool ok = sol.dual && !dual_violation(*sol.dual, n, lp.m) && binomial_expectation(*sol.dual, n, p) == sol.Z &&
            complementary_slackness(sol, *sol.dual, lp.m);
  rep.result["simplex_dual_certified"] = ok;
  if (a.closed_form) {
    if (k != 2 && k != 3) throw InvalidInput("--closed-form is available for k = 2 and k = 3");
    try {
      LPSolution c = k == 2 ? closed_form_k2(n, p, delta) : closed_form_k3(n, p, delta);
      rep.result["closed_form"] = report::lp_solution(c);
      rep.result["closed_form"]["valid"] = true;
      rep.result["closed_form"]["match"] = c.Z == sol.Z;
      ok = ok && c.Z == sol.Z;
    } catch (const OutOfClosedFormRange& e) {
      rep.result["closed_form"] = {{"valid", false}, {"reason", e.what()}};
    }
  }
  if (a.dual && (k == 2 || k == 3)) {
    try {
      DualCertificate d = dual_certificate(n, p, delta, static_cast<int>(k));
      rep.result["dual"] = report::dual_certificate(d);
      rep.result["dual"]["complementary_slackness"] = complementary_slackness(sol, d.Q, lp.m);
      ok = ok && d.feasible && d.zero_gap && d.value == sol.Z && complementary_slackness(sol, d.Q, lp.m);
    } catch (const OutOfClosedFormRange& e) {
      rep.result["dual"] = {{"valid", false}, {"reason", e.what()}};
    }
  }
  rep.status = status_of(ok);
  return rep;
}

// ---------------------------------------------------------------------------
// examples

struct ExamplesArgs {
  std::string family;
  std::string n;
  std::string delta = "1";
  std::string c = "3";
  std::string out;
};

Report cmd_examples(const ExamplesArgs& a) {
  Report rep;
  rep.command = "examples";
  rep.inputs = {{"family", a.family}};
  const std::uint64_t budget = atom_budget_from_env();
  auto get_n = [&](long dflt) {
    long n = a.n.empty() ? dflt : arg_integer(a.n, "--n");
    if (n < 1) throw InvalidInput("--n must be >= 1");
    rep.inputs["n"] = n;
    return n;
  };
  auto get_delta = [&] {
    Rational d = arg_rational(a.delta, "--delta");
    if (d.sign() <= 0) throw InvalidInput("--delta must be > 0");
    rep.inputs["delta"] = d.str();
    return d;
  };
  DiscreteDistribution dist;
  bool ok = false;
  if (a.family == "feige" || a.family == "spike") {
    long n = get_n(a.family == "feige" ? 2 : 1);
    Rational d = get_delta();
    ExtremalInstance inst = a.family == "feige" ? feige_family(n, d, budget) : spike_family(n, d);
    dist = sum_distribution(inst.vars, budget);
    json vars = json::array();
    for (const auto& v : inst.vars) vars.push_back(report::distribution_file(v));
    rep.result = {{"variables", vars},
                  {"threshold", inst.threshold.str()},
                  {"event", "sum < threshold"},
                  {"probability", report::exact(inst.convolved)},
                  {"closed_form", inst.closed_form.str()},
                  {"agrees", inst.agrees()}};
    ok = inst.agrees();
  } else if (a.family == "threepoint") {
    Rational c = arg_rational(a.c, "--c");
    if (c < Rational(1)) throw InvalidInput("--c must be >= 1");
    rep.inputs["c"] = c.str();
    dist = symmetric_three_point(Rational(1), (Rational(2) * c).reciprocal());
    Rational prob = dist.prob_at_least(Rational(0));
    Rational m2 = dist.raw_moment(2);
    Rational kurt = dist.raw_moment(4) / (m2 * m2);
    Rational target = Rational(1) - (Rational(2) * c).reciprocal();
    rep.result = {{"event", "X >= 0"},
                  {"probability", report::exact(prob)},
                  {"closed_form", target.str()},
                  {"kurtosis", kurt.str()},
                  {"third_moment", dist.raw_moment(3).str()}};
    ok = prob == target && kurt == c;
  } else if (a.family == "kwise2" || a.family == "kwise3") {
    int k = a.family == "kwise2" ? 2 : 3;
    long n = get_n(k == 2 ? 9 : 10);
    Rational d = get_delta();
    KwiseCounterexample ce = [&] {
      try {
        return counterexample(n, d, k);
      } catch (const std::invalid_argument& e) {
        throw InvalidInput(e.what());
      }
    }();
    dist = ce.scaled;
    rep.result = report::counterexample(ce);
    rep.result["event"] = "sum < n + delta";
    ok = ce.moments_match && ce.next_moment_differs && ce.probability == ce.formula;
  } else {
    throw InvalidInput("unknown family '" + a.family + "'");
  }
  rep.result["distribution"] = report::distribution_file(dist);
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw InvalidInput("cannot write " + a.out);
    f << report::distribution_file(dist).dump(2) << "\n";
    rep.result["distribution_file"] = a.out;
  }
  rep.status = status_of(ok);
  return rep;
}

// ---------------------------------------------------------------------------
// search

struct SearchArgs {
  std::string n, delta;
  std::vector<std::string> grid;
  std::string mu = "1/4,1/2,3/4,1";
  unsigned workers = 1;
};

std::string family_label(const std::vector<NonnegTwoPoint>& vars, const std::vector<std::size_t>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i)
    s += (i ? " " : "") + std::string("(") + vars[idx[i]].c.str() + "," + vars[idx[i]].mu.str() + ")";
  return s;
}

Report cmd_search(const SearchArgs& a) {
  long n = arg_integer(a.n, "n");
  if (n < 1) throw InvalidInput("n must be >= 1");
  Rational delta = arg_rational(a.delta, "delta");
  if (delta.sign() <= 0) throw InvalidInput("delta must be > 0");
  SearchGrid grid = SearchGrid::default_grid();
  if (!a.grid.empty()) {
    std::string spec;
    for (const auto& tok : a.grid) spec += (spec.empty() ? "" : " ") + tok;
    grid.c_values = parse_grid(spec);
  }
  grid.mu_values = rational_list(a.mu, "--mu");
  if (grid.variables().empty()) throw InvalidInput("the grid has no variable with 0 < mu <= min(c, 1)");
  if (a.workers < 1) throw InvalidInput("--workers must be >= 1");

  Report rep;
  rep.command = "search";
  json cs = json::array(), ms = json::array();
  for (const auto& c : grid.c_values) cs.push_back(c.str());
  for (const auto& m : grid.mu_values) ms.push_back(m.str());
  rep.inputs = {{"n", n}, {"delta", delta.str()}, {"c_values", cs}, {"mu_values", ms}};
  SearchResult res = [&] {
    try {
      return brute_force_min_tail(n, delta, grid, a.workers, atom_budget_from_env());
    } catch (const BudgetExceeded& e) {
      throw InvalidInput(std::string("budget exceeded: ") + e.what());
    }
  }();
  report::Table t{{"family", "tail_exact", "tail_decimal"}, {}};
  for (const auto& row : res.rows)
    t.rows.push_back({family_label(res.grid_vars, row.family), row.tail.str(), row.tail.decimal(12)});
  json best = json::array();
  for (const auto& v : res.best_family()) best.push_back(report::two_point(v));
  rep.result = {{"families", res.rows.size()},
                {"event", "sum < sum of means + delta"},
                {"min_tail", report::exact(res.min_tail())},
                {"best_family", best}};
  // The 7/50 floor applies for delta >= 1, where the event only grows.
  bool ok = true;
  if (delta >= Rational(1)) {
    ok = res.min_tail() >= Rational(7, 50);
    rep.result["floor"] = {{"value", "7/50"}, {"holds", ok}};
  }
  rep.table = std::move(t);
  rep.status = status_of(ok);
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smalldev: exact verification of small-deviation bounds for sums of random variables"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Run certificate verifiers");
  certify->add_option("target", ca.target, "What to verify")
      ->required()
      ->check(CLI::IsMember({"theorem2", "theorem3", "lemma425", "lemma-negthird", "beta", "domination", "all"}));
  certify->add_option("--c", ca.c_values, "Kurtosis constants for theorem2")->capture_default_str();
  certify->add_option("--delta", ca.delta, "Shift for lemma425")->capture_default_str();
  certify->add_option("--count", ca.count, "Random (l, r) pairs for domination")->capture_default_str();
  certify->add_option("--seed", ca.seed, "Seed for domination")->capture_default_str();

  LpArgs la;
  auto* lp = app.add_subcommand("lp", "Solve the k-wise independence moment LP exactly");
  lp->add_option("n", la.n, "Number of variables (maximum n with --sweep)");
  lp->add_option("k", la.k, "Independence order");
  lp->add_option("p", la.p, "Success probability");
  lp->add_option("delta", la.delta, "Deviation above the mean");
  lp->add_flag("--closed-form", la.closed_form, "Cross-check against the closed-form optimum");
  lp->add_flag("--dual", la.dual, "Check the explicit dual polynomial");
  lp->add_flag("--sweep", la.sweep, "Sweep n, p, delta for k = 2, 3");
  lp->add_option("--max-n", la.max_n, "Largest n in the sweep")->capture_default_str();

  ExamplesArgs ea;
  auto* ex = app.add_subcommand("examples", "Build an extremal distribution");
  ex->add_option("family", ea.family, "Family")
      ->required()
      ->check(CLI::IsMember({"feige", "spike", "threepoint", "kwise2", "kwise3"}));
  ex->add_option("--n", ea.n, "Number of variables");
  ex->add_option("--delta", ea.delta, "Deviation")->capture_default_str();
  ex->add_option("--c", ea.c, "Kurtosis constant (threepoint)")->capture_default_str();
  ex->add_option("--out", ea.out, "Write the distribution file here");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Exhaustive minimum tail over a grid of two-point families");
  search->add_option("n", sa.n, "Family size")->required();
  search->add_option("delta", sa.delta, "Deviation above the mean")->required();
  search->add_option("--grid", sa.grid, "Support values, e.g. c=1..10 step 1/4")->expected(1, 3);
  search->add_option("--mu", sa.mu, "Comma-separated means")->capture_default_str();
  search->add_option("--workers", sa.workers, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return report::exit_code(Status::Error);
  }

  report::Stopwatch clock;
  Report rep;
  try {
    if (*certify) rep = cmd_certify(ca);
    if (*lp) rep = cmd_lp(la);
    if (*ex) rep = cmd_examples(ea);
    if (*search) rep = cmd_search(sa);
  } catch (const std::exception& e) {
    rep = Report{};
    rep.command = app.get_subcommands().front()->get_name();
    rep.status = Status::Error;
    rep.result = {{"error", e.what()}};
    std::cerr << "error: " << e.what() << "\n";
  }
  rep.seconds = clock.seconds();
  std::cout << rep.render(report::format_from(format));
  return report::exit_code(rep.status);
}
