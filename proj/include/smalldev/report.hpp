#pragma once
// JSON, CSV and text rendering of verification results. Rationals are written
// as exact "p/q" strings, with a 12-digit decimal alongside in report payloads.

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "smalldev/certificates.hpp"
#include "smalldev/distributions.hpp"
#include "smalldev/exactnum.hpp"
#include "smalldev/kwise.hpp"
#include "smalldev/poly.hpp"

namespace smalldev::report {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalars

inline json exact(const Rational& r) { return {{"exact", r.str()}, {"decimal", r.decimal(12)}}; }

/// Accepts "p/q", a decimal string, or an {"exact": ...} object.
inline Rational rational_from(const json& j) {
  if (j.is_object()) return Rational::parse(j.at("exact").get<std::string>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

/// Inverse of QuadExt::str: "a", "b*sqrt(3)", "a+b*sqrt(3)", "a-sqrt(3)", ...
inline QuadExt parse_quadext(const std::string& s) {
  const std::string root = "sqrt(3)";
  if (s.size() < root.size() || s.compare(s.size() - root.size(), root.size(), root) != 0)
    return QuadExt(Rational::parse(s));
  std::string body = s.substr(0, s.size() - root.size());
  if (!body.empty() && body.back() == '*') body.pop_back();
  std::size_t split = body.find_last_of("+-");
  std::string a = split == std::string::npos ? "" : body.substr(0, split);
  std::string b = split == std::string::npos ? body : body.substr(split);
  if (b.empty() || b == "+") b = "1";
  if (b == "-") b = "-1";
  return QuadExt(a.empty() ? Rational(0) : Rational::parse(a), Rational::parse(b));
}

inline json interval(const RationalInterval& x) { return {{"lo", x.lo().str()}, {"hi", x.hi().str()}}; }

inline RationalInterval interval_from(const json& j) {
  return {rational_from(j.at("lo")), rational_from(j.at("hi"))};
}

template <class S>
json poly(const Polynomial<S>& p) {
  json a = json::array();
  for (const auto& s : to_strings(p)) a.push_back(s);
  return a;
}

inline RationalPoly rational_poly_from(const json& j) {
  std::vector<Rational> c;
  for (const auto& v : j) c.push_back(rational_from(v));
  return RationalPoly(std::move(c));
}

inline QuadPoly quad_poly_from(const json& j) {
  std::vector<QuadExt> c;
  for (const auto& v : j) c.push_back(parse_quadext(v.get<std::string>()));
  return QuadPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// Distributions

inline json distribution_file(const DiscreteDistribution& d) {
  json a = json::array();
  for (const auto& at : d.atoms()) a.push_back({{"value", at.value.str()}, {"prob", at.prob.str()}});
  return a;
}

inline DiscreteDistribution distribution_from_file(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("distribution file must be a JSON list");
  std::vector<Atom> atoms;
  for (const auto& e : j) atoms.push_back({rational_from(e.at("value")), rational_from(e.at("prob"))});
  return DiscreteDistribution(atoms);
}

inline json two_point(const NonnegTwoPoint& v) { return {{"c", v.c.str()}, {"mu", v.mu.str()}}; }
inline json two_point(const CenteredTwoPoint& v) { return {{"a", v.a.str()}, {"b", v.b.str()}}; }

// ---------------------------------------------------------------------------
// Certificates

inline json sign_certificate(const SignCertificate& c) {
  json j{{"method", to_string(c.method)},
         {"claim", to_string(c.claim)},
         {"bound", c.bound.str()},
         {"interval", {{"lo", c.lo.str()}, {"hi", c.hi.str()}}},
         {"certified", c.certified}};
  if (c.method == CertMethod::Sturm) {
    j["leaves"] = c.leaves.size();
  } else {
    j["convexity_basis"] = c.convexity_basis;
    j["value_lo"] = c.value_lo.str();
    j["value_hi"] = c.value_hi.str();
  }
  if (c.witness_point) j["witness_point"] = c.witness_point->str();
  if (c.witness_interval) j["witness_interval"] = {c.witness_interval->first.str(), c.witness_interval->second.str()};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline json case_certificate(const CaseCertificate& c) {
  json j{{"case", c.case_id},
         {"l", c.ell_formula},
         {"r", c.r_formula},
         {"sigma_interval", {{"lo", c.sigma_lo.str()}, {"hi", c.sigma_hi ? json(c.sigma_hi->str()) : json("inf")}}},
         {"variable", c.variable},
         {"variable_interval", {{"lo", c.var_lo.str()}, {"hi", c.var_hi.str()}}},
         {"bound_polynomial", poly(c.bound)},
         {"sturm", sign_certificate(c.sturm)}};
  if (c.sqrt3_bounds) j["sqrt3_enclosure"] = interval(*c.sqrt3_bounds);
  if (c.convexity) j["convexity"] = sign_certificate(*c.convexity);
  j["spot_check"] = c.spot_check_passed;
  j["certified"] = c.certified;
  if (!c.failure.empty()) j["failure"] = c.failure;
  return j;
}

inline json theorem_certificate(const TheoremCertificate& t) {
  json cases = json::array();
  for (const auto& c : t.cases) cases.push_back(case_certificate(c));
  json j{{"theorem", t.theorem},
         {"delta", t.delta.str()},
         {"regime", t.regime.name()},
         {"target", t.target.str()},
         {"cases", cases},
         {"coverage", t.coverage_ok},
         {"certified", t.certified}};
  if (!t.failure.empty()) j["failure"] = t.failure;
  return j;
}

inline json theorem2_certificate(const Theorem2Certificate& t) {
  return {{"theorem", "theorem2"},
          {"c", t.c.str()},
          {"target", exact(t.target)},
          {"bound", exact(t.bound_value)},
          {"case", case_certificate(t.case_certificate)},
          {"tight_example", distribution_file(t.tight_example)},
          {"tight_probability", exact(t.tight_probability)},
          {"tight_kurtosis", t.tight_kurtosis.str()},
          {"certified", t.certified}};
}

inline json beta_certificate(const BetaCertificate& b) {
  return {{"coefficient", b.coefficient.str()},
          {"exponent", b.exponent.str()},
          {"terms", b.terms},
          {"exp_enclosure", interval(b.exp_enclosure)},
          {"beta_enclosure", interval(b.beta_enclosure)},
          {"beta_decimal", b.beta_enclosure.lo().decimal(15)},
          {"width", exact(b.beta_enclosure.width())},
          {"max_width", b.max_width.str()},
          {"threshold", b.threshold.str()},
          {"coefficient_identity", b.coefficient_identity},
          {"certified", b.certified}};
}

inline json domination_proof(const DominationProof& d) {
  return {{"l", d.ell.str()},
          {"r", d.r.str()},
          {"product_residual_zero", d.product_residual.is_zero()},
          {"shifted_residual_zero", d.shifted_residual.is_zero()},
          {"quadratic_minimum", d.quadratic_minimum.str()},
          {"certified", d.passed}};
}

// ---------------------------------------------------------------------------
// Moment LP

inline json lp_instance(const KwiseMomentLP& lp) {
  json moments = json::array();
  for (const auto& m : lp.moments()) moments.push_back(m.str());
  return {{"n", lp.n}, {"k", lp.k}, {"p", lp.p.str()}, {"delta", lp.delta.str()}, {"m", lp.m}, {"moments", moments}};
}

inline json lp_solution(const LPSolution& s) {
  json support = json::array();
  for (const auto& [r, pr] : s.support) support.push_back({{"value", std::to_string(r)}, {"prob", pr.str()}});
  json j{{"status", to_string(s.status)}, {"Z", exact(s.Z)}, {"support", support}};
  if (s.dual) j["dual_polynomial"] = poly(*s.dual);
  if (s.pivots) j["pivots"] = s.pivots;
  return j;
}

inline json dual_certificate(const DualCertificate& d) {
  json j{{"k", d.k},
         {"polynomial", poly(d.Q)},
         {"feasible", d.feasible},
         {"expectation", exact(d.value)},
         {"closed_form_Z", d.closed_form_Z.str()},
         {"zero_gap", d.zero_gap}};
  if (d.violation) j["violation_at"] = *d.violation;
  if (d.printed) {
    j["printed_polynomial"] = poly(*d.printed);
    j["printed_agrees"] = d.printed_agrees;
  }
  return j;
}

inline json counterexample(const KwiseCounterexample& c) {
  return {{"k", c.k},
          {"n", c.n},
          {"delta", c.delta.str()},
          {"p", c.p.str()},
          {"m", c.m},
          {"sum_distribution", distribution_file(c.sum)},
          {"distribution", distribution_file(c.scaled)},
          {"probability", exact(c.probability)},
          {"formula", c.formula.str()},
          {"moments_match_through_k", c.moments_match},
          {"moment_k_plus_1_differs", c.next_moment_differs}};
}

// ---------------------------------------------------------------------------
// Reports

enum class Status { Certified, Falsified, Error };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Certified: return "certified";
    case Status::Falsified: return "falsified";
    case Status::Error: return "error";
  }
  return "error";
}

inline Status status_from(const std::string& s) {
  if (s == "certified") return Status::Certified;
  if (s == "falsified") return Status::Falsified;
  if (s == "error") return Status::Error;
  throw std::invalid_argument("unknown status '" + s + "'");
}

inline int exit_code(Status s) {
  switch (s) {
    case Status::Certified: return 0;
    case Status::Falsified: return 1;
    case Status::Error: return 2;
  }
  return 2;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  friend bool operator==(const Table&, const Table&) = default;
};

enum class Format { Json, Csv, Text };

inline Format format_from(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw std::invalid_argument("unknown format '" + s + "'");
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

inline std::string csv(const Table& t) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
    os << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return os.str();
}

/// Leaf values of a JSON document keyed by their JSON pointer.
inline void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix + "/" + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "/" + std::to_string(i), out);
  } else {
    out.emplace_back(prefix.empty() ? "/" : prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

struct Report {
  std::string command;
  json inputs = json::object();
  json result = json::object();
  Status status = Status::Error;
  double seconds = 0;
  std::optional<Table> table;  // tabular payload for CSV output

  [[nodiscard]] json to_json() const {
    json j{{"command", command},
           {"inputs", inputs},
           {"result", result},
           {"status", report::to_string(status)},
           {"timing", {{"seconds", seconds}}}};
    if (table) j["table"] = {{"header", table->header}, {"rows", table->rows}};
    return j;
  }

  static Report from_json(const json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.result = j.at("result");
    r.status = status_from(j.at("status").get<std::string>());
    r.seconds = j.at("timing").at("seconds").get<double>();
    if (j.contains("table")) {
      Table t;
      t.header = j["table"].at("header").get<std::vector<std::string>>();
      t.rows = j["table"].at("rows").get<std::vector<std::vector<std::string>>>();
      r.table = std::move(t);
    }
    return r;
  }

  [[nodiscard]] std::string serialize() const { return to_json().dump(2); }
  static Report parse(const std::string& text) { return from_json(json::parse(text)); }

  [[nodiscard]] std::string render(Format f) const {
    switch (f) {
      case Format::Json: return serialize() + "\n";
      case Format::Csv: {
        if (table) return csv(*table);
        std::vector<std::pair<std::string, std::string>> kv;
        flatten(result, "", kv);
        Table t{{"key", "value"}, {}};
        t.rows.push_back({"/status", report::to_string(status)});
        for (auto& [k, v] : kv) t.rows.push_back({k, v});
        return csv(t);
      }
      case Format::Text: {
        std::ostringstream os;
        os << command << ": " << report::to_string(status) << "\n";
        std::vector<std::pair<std::string, std::string>> kv;
        flatten(result, "", kv);
        for (auto& [k, v] : kv) os << "  " << k << " = " << v << "\n";
        if (table) {
          os << "  " << table->rows.size() << " rows:\n";
          for (const auto& row : table->rows) {
            os << "   ";
            for (const auto& cell : row) os << " " << cell;
            os << "\n";
          }
        }
        return os.str();
      }
    }
    return {};
  }

  friend bool operator==(const Report& a, const Report& b) {
    return a.command == b.command && a.inputs == b.inputs && a.result == b.result && a.status == b.status &&
           a.seconds == b.seconds && a.table == b.table;
  }
};

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace smalldev::report
