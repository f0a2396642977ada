// Runs the nine acceptance criteria and prints one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "difformal/errors.hpp"
#include "difformal/parser.hpp"
#include "difformal/pipeline.hpp"
#include "support.hpp"

using namespace difformal;
using namespace difformal::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

/// Rule sets from every run in this binary, checked together by criterion 5.
struct EmittedRule {
  Factorization factorization;
  RuleSet rule;
};
std::vector<EmittedRule> g_emitted;

void collect(const RunResult& r) {
  for (const auto& kr : r.results)
    for (const auto& rule : kr.solutions.rules) g_emitted.push_back({kr.factorization, rule});
}

RunConfig cubic_config() {
  RunConfig c;
  c.input = kCubicSecondDerivative;
  c.verify = true;
  c.tol = 1e-8;
  c.samples = 10;
  c.seed = 2024;
  return c;
}

RuleSet rule_of(std::map<ParamSymbol, Rational> a, std::set<ParamSymbol> f = {}) { return {std::move(a), std::move(f)}; }

Outcome criterion_1() {
  Outcome o;
  const auto start = Clock::now();
  const RunResult r = run(cubic_config());
  const double elapsed = seconds_since(start);
  collect(r);
  const std::vector<std::string> expected{"c", "c1*x + c2", "c1*exp(x) - 2*x + c2"};
  o.require(r.families == expected, "families differ");
  for (const auto& kr : r.results)
    for (const auto& rec : kr.records)
      o.require(rec.verified && rec.worst_residual && *rec.worst_residual < 1e-8, "residual for " + rec.expression);
  o.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  o.detail = o.passed ? "3 families verified in " + std::to_string(elapsed) + " s" : o.detail;
  return o;
}

Outcome criterion_2() {
  Outcome o;
  RunConfig c = cubic_config();
  c.k = 2;
  const RunResult r = run(c);
  collect(r);
  const auto& kr = r.results.at(0);
  const ParamSymbol w0 = ParamSymbol::w(0, 2), w1 = ParamSymbol::w(1, 2), w2 = ParamSymbol::w(2, 2);
  const std::vector<RuleSet> expected{rule_of({{w0, -2}, {w1, 0}, {w2, -1}}), rule_of({{w0, 0}, {w1, 0}, {w2, 0}})};
  o.require(kr.solutions.rules.size() == 2, "rule count");
  for (const auto& e : expected)
    o.require(std::find(kr.solutions.rules.begin(), kr.solutions.rules.end(), e) != kr.solutions.rules.end(),
              "missing " + to_string(e));
  o.require(kr.solutions.unresolved.empty(), "unresolved components");
  o.require(kr.factorization.remainder == reference_remainder(), "remainder differs from the reference");
  if (o.passed) o.detail = "S_2 and the 10-monomial remainder match";
  return o;
}

Outcome criterion_3() {
  Outcome o;
  RunConfig c = cubic_config();
  c.input = kPolynomialForcing;
  c.k = 1;
  c.free_poly_degree = 2;
  const auto start = Clock::now();
  const RunResult r = run(c);
  const double elapsed = seconds_since(start);
  collect(r);
  const auto& rules = r.results.at(0).solutions.rules;
  const ParamSymbol v0 = ParamSymbol::v(0), v1 = ParamSymbol::v(1), v2 = ParamSymbol::v(2), w11 = ParamSymbol::w(1, 1);
  const std::vector<RuleSet> expected{rule_of({{w11, -1}, {v2, 1}, {v1, 3}}, {v0}),
                                      rule_of({{w11, 0}, {v2, 0}, {v1, -2}, {v0, -5}})};
  for (const auto& e : expected)
    o.require(std::find(rules.begin(), rules.end(), e) != rules.end(), "missing " + to_string(e));
  o.require(std::find(r.families.begin(), r.families.end(), "c1*exp(x) + x^2 + 5*x + c2") != r.families.end(),
            "family c1*exp(x) + x^2 + 5*x + c2 missing");
  for (const auto& rec : r.results.at(0).records) o.require(rec.verified, "unverified " + rec.expression);
  o.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  if (o.passed) o.detail = "both rule sets and the folded family in " + std::to_string(elapsed) + " s";
  return o;
}

std::vector<DiffPoly> random_corpus() {
  Rng rng(20061);
  std::vector<DiffPoly> out;
  for (int i = 0; i < 200; ++i) out.push_back(random_diffpoly(rng));
  return out;
}

Outcome criterion_4() {
  Outcome o;
  const auto start = Clock::now();
  int runs = 0, failures = 0;
  for (const auto& p : random_corpus())
    for (int k = 0; k <= *p.order(); ++k)
      for (auto mode : {FactorMode::Common, FactorMode::General})
        for (int d = 0; d <= 1; ++d) {
          ++runs;
          if (!reconstruction_check(formal_k_factorization(p, k, mode, d)).passed) ++failures;
        }
  const double elapsed = seconds_since(start);
  o.require(failures == 0, std::to_string(failures) + " reconstruction failures");
  o.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
  if (o.passed) o.detail = std::to_string(runs) + " factorizations exact in " + std::to_string(elapsed) + " s";
  return o;
}

Outcome criterion_5() {
  Outcome o;
  int skipped = 0;
  for (const auto& p : random_corpus())
    for (int k = 0; k <= *p.order(); ++k) {
      const Factorization f = formal_k_factorization(p, k, FactorMode::Common);
      try {
        const Solutions sol = solve_system({remainder_system(f), default_variable_order(f.parameters())});
        for (const auto& rule : sol.rules) g_emitted.push_back({f, rule});
      } catch (const ResourceLimit&) {
        ++skipped;
      }
    }
  int failures = 0;
  for (const auto& e : g_emitted)
    if (!remainder_vanishes(e.factorization, e.rule).passed) ++failures;
  o.require(failures == 0, std::to_string(failures) + " rule sets leave a remainder");
  o.detail = o.passed ? std::to_string(g_emitted.size()) + " rule sets eliminate their remainder" : o.detail;
  if (skipped) o.detail += " (" + std::to_string(skipped) + " random systems hit the resource limit)";
  return o;
}

Outcome criterion_6() {
  Outcome o;
  RunConfig c;
  c.input = kQuadraticSecondDerivative;
  c.mode = FactorMode::General;
  c.k = 2;
  const RunResult r = run(c);
  const auto& kr = r.results.at(0);
  o.require(reconstruction_check(kr.factorization).passed, "reconstruction");
  o.require(!remainder_system(kr.factorization).empty(), "empty remainder system");
  o.require(kr.ideal.has_value(), "no ideal statement");
  o.require(emit(r, OutputFormat::Json).find("\"ideal\"") != std::string::npos, "ideal not emitted");
  for (const auto& rule : kr.solutions.rules)
    o.require(remainder_vanishes(kr.factorization, rule).passed, "rule " + to_string(rule));
  if (o.passed)
    o.detail = std::to_string(remainder_system(kr.factorization).size()) + " equations, " +
               std::to_string(kr.solutions.rules.size()) + " resolved, " +
               std::to_string(kr.solutions.unresolved.size()) + " unresolved";
  return o;
}

Outcome criterion_7() {
  Outcome o;
  Rng rng(7007);
  const auto start = Clock::now();
  int missing = 0, unsound = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const PlantedSystem ps = random_planted_system(rng);
    const Solutions sol = solve_system(ps.system);
    for (const auto& r : sol.rules)
      for (const auto& e : ps.system.equations)
        if (!e.substitute(r).is_zero()) ++unsound;
    for (const auto& point : brute_force_solutions(ps.system)) {
      const bool covered = std::any_of(sol.rules.begin(), sol.rules.end(), [&](const RuleSet& r) {
        for (const auto& [s, v] : point)
          if (!r.free.count(s) && (!r.assignments.count(s) || r.assignments.at(s) != v)) return false;
        return true;
      });
      if (!covered) ++missing;
    }
  }
  const double elapsed = seconds_since(start);
  o.require(missing == 0, std::to_string(missing) + " brute-force solutions missing");
  o.require(unsound == 0, std::to_string(unsound) + " equations not satisfied");
  o.require(elapsed < 120.0, "runtime " + std::to_string(elapsed) + " s");
  if (o.passed) o.detail = "100 systems agree with brute force in " + std::to_string(elapsed) + " s";
  return o;
}

Outcome criterion_8() {
  Outcome o;
  const std::pair<const char*, const char*> cases[] = {{"y'' - y' - 2", "c1*exp(x) - 2*x + c2"}, {"y''", "c1*x + c2"}};
  for (const auto& [factor, expected] : cases) {
    const LinearOde ode = LinearOde::from_factor(parse_diffpoly(factor));
    const GeneralSolution sol = general_solution(ode);
    o.require(format_solution(sol) == expected, std::string(factor) + " gave " + format_solution(sol));
    o.require(check_exact(ode, sol) == true, std::string(factor) + " symbolic residual nonzero");
    o.require(sol.constant_count() == ode.order, std::string(factor) + " constant count");
  }
  if (o.passed) o.detail = "both solutions have zero symbolic residual";
  return o;
}

Outcome criterion_9() {
  Outcome o;
  const std::string a = emit(run(cubic_config()), OutputFormat::Json);
  const std::string b = emit(run(cubic_config()), OutputFormat::Json);
  o.require(a == b, "JSON differs between runs");
  if (o.passed) o.detail = std::to_string(a.size()) + " bytes identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"cubic polynomial end to end", criterion_1},
      {"k = 2 rules and remainder", criterion_2},
      {"quadratic free term at k = 1", criterion_3},
      {"reconstruction identity on 200 random polynomials", criterion_4},
      {"every emitted rule set eliminates its remainder", criterion_5},
      {"general mode at k = 2", criterion_6},
      {"solver agrees with brute force on 100 systems", criterion_7},
      {"linear ODE spot checks", criterion_8},
      {"deterministic JSON", criterion_9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.passed;
    std::printf("[%s] %zu. %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
