#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "difformal/factorize.hpp"
#include "difformal/ode.hpp"

namespace difformal {

enum class CheckKind { Reconstruction, RemainderVanishes, Residual };

struct SampleRecord {
  double x = 0.0;
  double residual = 0.0;  ///< normalised: |p| / (1 + max |term|)
};

struct VerificationReport {
  CheckKind kind = CheckKind::Reconstruction;
  bool passed = false;
  std::optional<double> worst_residual;
  std::vector<SampleRecord> details;
  std::string note;
};

/// Exact: expand(f) - f.p_input == 0.
VerificationReport reconstruction_check(const Factorization& f);

/// Exact: f.remainder with `rule` substituted is the zero polynomial.
VerificationReport remainder_vanishes(const Factorization& f, const RuleSet& rule);

/// Sample x in [-1, 1] and every constant in [-2, 2] from `seed`, evaluate p on
/// the analytic derivatives of `sol`, and pass iff the worst normalised residual
/// is below `tol`. Retained symbols and unsolved families are sampled per point
/// in [-2, 2] as well.
VerificationReport residual_check(const DiffPoly& p, const GeneralSolution& sol, int samples, double tol,
                                  std::uint64_t seed);

std::string to_string(CheckKind kind);

}  // namespace difformal
