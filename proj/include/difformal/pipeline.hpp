#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "difformal/errors.hpp"
#include "difformal/factorize.hpp"
#include "difformal/ode.hpp"
#include "difformal/solver.hpp"
#include "difformal/verify.hpp"

namespace difformal {

enum class OutputFormat { Json, Text };

struct RunConfig {
  std::string input;
  std::optional<int> k;  ///< nullopt selects every k in [0, order]
  FactorMode mode = FactorMode::Common;
  int free_poly_degree = 0;
  OutputFormat format = OutputFormat::Json;
  bool verify = false;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int samples = 10;
  SolverLimits limits;
};

struct SolutionRecord {
  std::string expression;
  int constants = 0;
  bool verified = false;
  std::optional<double> worst_residual;
  std::optional<bool> exact;  ///< symbolic ODE check, when every rate is exact
  GeneralSolution solution;
};

struct KResult {
  int k = 0;
  Factorization factorization;
  Solutions solutions;  ///< S_k and unresolved components
  std::vector<std::string> factors;
  std::vector<SolutionRecord> records;
  std::optional<std::string> ideal;  ///< GENERAL mode only
  std::vector<VerificationReport> reports;
};

struct RunResult {
  std::string input;
  std::optional<int> order;
  FactorMode mode = FactorMode::Common;
  std::vector<KResult> results;
  std::vector<std::string> families;
  std::string note;
};

/// Raised for k outside [0, order] or a negative free-poly degree.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Parse, then run every selected k concurrently; results are ordered by k.
/// Propagates SyntaxError/UnsupportedError, ResourceLimit and ConfigError.
RunResult run(const RunConfig& config);

/// Same pipeline on an already-parsed polynomial.
RunResult run(const DiffPoly& p, const RunConfig& config);

std::string emit(const RunResult& result, OutputFormat format);

std::string to_string(FactorMode mode);

}  // namespace difformal
