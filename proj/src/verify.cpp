#include "difformal/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace difformal {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [lo, hi], identical on every platform.
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  /// Uniform multiple of 1/64 in [lo, hi], for exact instance parameters.
  Rational dyadic(double lo, double hi) {
    Rational q(static_cast<long>(std::floor(uniform(lo, hi) * 64.0)), 64);
    q.canonicalize();
    return q;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

VerificationReport reconstruction_check(const Factorization& f) {
  VerificationReport r;
  r.kind = CheckKind::Reconstruction;
  const DiffPoly diff = expand(f) - f.p_input;
  r.passed = diff.is_zero();
  if (!r.passed) r.note = std::to_string(diff.size()) + " monomials differ";
  return r;
}

VerificationReport remainder_vanishes(const Factorization& f, const RuleSet& rule) {
  VerificationReport r;
  r.kind = CheckKind::RemainderVanishes;
  const DiffPoly rest = f.remainder.substitute_params(rule);
  r.passed = rest.is_zero();
  if (!r.passed) r.note = std::to_string(rest.size()) + " remainder monomials survive";
  return r;
}

VerificationReport residual_check(const DiffPoly& p, const GeneralSolution& sol, int samples, double tol,
                                  std::uint64_t seed) {
  VerificationReport r;
  r.kind = CheckKind::Residual;
  const int max_order = p.order().value_or(0);
  Sampler sampler(seed);
  double worst = 0.0;

  for (int i = 0; i < samples; ++i) {
    const double x = sampler.uniform(-1.0, 1.0);
    GeneralSolution instance = sol;
    std::map<ParamSymbol, double> params;
    if (sol.unsolved) {
      RuleSet rule;
      for (const auto& s : sol.retained) rule.assignments[s] = sampler.dyadic(-2.0, 2.0);
      LinearOde ode = *sol.unsolved;
      for (auto& c : ode.y_coeffs) c = c.substitute(rule);
      for (auto& c : ode.forcing) c = c.substitute(rule);
      instance = general_solution(ode);
    } else {
      for (const auto& s : sol.retained) params[s] = sampler.uniform(-2.0, 2.0);
    }
    std::vector<double> constants(static_cast<std::size_t>(std::max(instance.constant_count(), 0)));
    for (auto& c : constants) c = sampler.uniform(-2.0, 2.0);

    NumericPoint pt;
    pt.x = x;
    pt.y_derivs = evaluate_solution(instance, x, constants, params, max_order);
    const double value = evaluate_numeric(p, pt);
    const double scale = 1.0 + max_term_magnitude(p, pt);
    const double normalized = std::isfinite(value) ? std::abs(value) / scale : INFINITY;
    r.details.push_back({x, normalized});
    worst = std::max(worst, normalized);
  }
  r.worst_residual = worst;
  r.passed = worst < tol;
  return r;
}

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::Reconstruction:
      return "reconstruction";
    case CheckKind::RemainderVanishes:
      return "remainder_vanishes";
    case CheckKind::Residual:
      return "residual";
  }
  return "unknown";
}

}  // namespace difformal
