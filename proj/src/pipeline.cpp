#include "difformal/pipeline.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "json.hpp"

#include "difformal/parser.hpp"

namespace difformal {

namespace {

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string rule_value(const RuleSet& rule, const ParamSymbol& s) {
  if (auto it = rule.assignments.find(s); it != rule.assignments.end()) return to_string(it->second);
  return "free";
}

std::string component_text(const UnresolvedComponent& c) {
  std::string out;
  for (const auto& [s, v] : c.partial) out += s.name() + " = " + to_string(v) + "; ";
  out += "basis: [";
  for (std::size_t i = 0; i < c.basis.size(); ++i) {
    if (i) out += ", ";
    out += to_string(c.basis[i]);
  }
  return out + "]";
}

std::string ideal_text(const Factorization& f) {
  std::string out = "p in [";
  for (std::size_t i = 0; i < f.forms.size(); ++i) {
    if (i) out += ", ";
    out += format_diffpoly(f.forms[i].as_diffpoly());
  }
  return out + "] when the remainder vanishes";
}

KResult run_k(const DiffPoly& p, int k, const RunConfig& config) {
  KResult out;
  out.k = k;
  out.factorization = formal_k_factorization(p, k, config.mode, config.free_poly_degree);
  const Factorization& f = out.factorization;
  out.reports.push_back(reconstruction_check(f));

  PolySystem sys{remainder_system(f), default_variable_order(f.parameters())};
  out.solutions = solve_system(sys, config.limits);

  const DiffPoly common = f.forms.front().as_diffpoly();
  for (const auto& rule : out.solutions.rules) {
    out.reports.push_back(remainder_vanishes(f, rule));
    const DiffPoly factor = common.substitute_params(rule);
    out.factors.push_back(format_diffpoly(factor));
    if (config.mode != FactorMode::Common) continue;

    const LinearOde ode = LinearOde::from_factor(factor);
    const GeneralSolution general = general_solution(ode);
    SolutionRecord rec;
    rec.exact = check_exact(ode, general);
    rec.solution = fold_free_parameters(general, rule.free);
    rec.expression = format_solution(rec.solution);
    rec.constants = rec.solution.constant_count();
    if (config.verify) {
      VerificationReport report =
          residual_check(p, rec.solution, config.samples, config.tol, config.seed + static_cast<std::uint64_t>(k));
      rec.worst_residual = report.worst_residual;
      rec.verified = report.passed && rec.exact.value_or(true);
      out.reports.push_back(std::move(report));
    }
    out.records.push_back(std::move(rec));
  }
  if (config.mode == FactorMode::General) out.ideal = ideal_text(f);
  return out;
}

}  // namespace

std::string to_string(FactorMode mode) { return mode == FactorMode::Common ? "common" : "general"; }

RunResult run(const RunConfig& config) {
  RunResult r = run(parse_diffpoly(config.input), config);
  r.input = trimmed(config.input);
  return r;
}

RunResult run(const DiffPoly& p, const RunConfig& config) {
  if (config.free_poly_degree < 0) throw ConfigError("free-poly-degree must be >= 0");
  if (config.samples < 1) throw ConfigError("sample count must be >= 1");
  RunResult r;
  r.input = format_diffpoly(p);
  r.mode = config.mode;
  r.order = p.order();
  if (!r.order) {
    if (config.k && *config.k != 0) throw ConfigError("k must be 0 for input without y");
    r.note = "no y-dependence; no linear factors";
    return r;
  }
  int lo = 0, hi = *r.order;
  if (config.k) {
    if (*config.k < 0 || *config.k > *r.order)
      throw ConfigError("k must lie in [0, " + std::to_string(*r.order) + "]");
    lo = hi = *config.k;
  }
  std::vector<std::future<KResult>> jobs;
  for (int k = lo; k <= hi; ++k)
    jobs.push_back(std::async(std::launch::async, [&p, k, &config] { return run_k(p, k, config); }));
  for (auto& job : jobs) r.results.push_back(job.get());

  for (const auto& kr : r.results)
    for (const auto& rec : kr.records)
      if (std::find(r.families.begin(), r.families.end(), rec.expression) == r.families.end())
        r.families.push_back(rec.expression);
  return r;
}

namespace {

std::string emit_json(const RunResult& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["input"] = r.input;
  j["order"] = r.order ? ordered_json(*r.order) : ordered_json(nullptr);
  j["mode"] = to_string(r.mode);
  j["results"] = ordered_json::array();
  for (const auto& kr : r.results) {
    ordered_json e;
    e["k"] = kr.k;
    e["summand_count"] = kr.factorization.summands.size();
    e["remainder_monomials"] = kr.factorization.remainder.size();
    e["S_k"] = ordered_json::array();
    const auto params = kr.factorization.parameters();
    for (const auto& rule : kr.solutions.rules) {
      ordered_json obj = ordered_json::object();
      for (const auto& s : params)
        if (rule.assignments.count(s) || rule.free.count(s)) obj[s.name()] = rule_value(rule, s);
      e["S_k"].push_back(std::move(obj));
    }
    e["unresolved"] = ordered_json::array();
    for (const auto& c : kr.solutions.unresolved) e["unresolved"].push_back(component_text(c));
    e["factors"] = kr.factors;
    e["solutions"] = ordered_json::array();
    for (const auto& rec : kr.records) {
      ordered_json s;
      s["expression"] = rec.expression;
      s["constants"] = rec.constants;
      s["verified"] = rec.verified;
      s["worst_residual"] = rec.worst_residual ? ordered_json(*rec.worst_residual) : ordered_json(nullptr);
      e["solutions"].push_back(std::move(s));
    }
    if (kr.ideal) e["ideal"] = *kr.ideal;
    j["results"].push_back(std::move(e));
  }
  j["families"] = r.families;
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump(2) + "\n";
}

std::string emit_text(const RunResult& r) {
  std::ostringstream os;
  os << "p = " << r.input << "\n";
  if (!r.note.empty()) {
    os << r.note << "\n";
    return os.str();
  }
  os << "order " << *r.order << ", mode " << to_string(r.mode) << "\n";
  for (const auto& kr : r.results) {
    const auto& f = kr.factorization;
    os << "\n== k = " << kr.k << " ==\n";
    os << "L = " << format_diffpoly(f.forms.front().as_diffpoly()) << "\n";
    os << kr.factorization.summands.size() << " summands, remainder:\n  R = "
       << (f.remainder.is_zero() ? "0" : format_diffpoly(f.remainder)) << "\n";
    if (kr.solutions.rules.empty() && kr.solutions.unresolved.empty())
      os << "no values eliminate the remainder\n";
    for (std::size_t i = 0; i < kr.solutions.rules.size(); ++i) {
      os << "S_" << kr.k << "[" << i + 1 << "] = " << to_string(kr.solutions.rules[i]) << "\n";
      os << "  factor: " << kr.factors[i] << " = 0\n";
      if (i < kr.records.size()) {
        const auto& rec = kr.records[i];
        os << "  y(x) = " << rec.expression;
        if (rec.worst_residual)
          os << "  [" << (rec.verified ? "verified" : "NOT verified") << ", residual " << *rec.worst_residual << "]";
        os << "\n";
      }
    }
    for (const auto& c : kr.solutions.unresolved) os << "unresolved: " << component_text(c) << "\n";
    if (kr.ideal) os << kr.ideal.value() << "\n";
  }
  if (!r.families.empty()) {
    os << "\nlinear solution families:\n";
    for (const auto& fam : r.families) os << "  y(x) = " << fam << "\n";
  }
  return os.str();
}

}  // namespace

std::string emit(const RunResult& result, OutputFormat format) {
  return format == OutputFormat::Json ? emit_json(result) : emit_text(result);
}

}  // namespace difformal
