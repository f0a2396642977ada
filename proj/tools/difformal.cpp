#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "difformal/errors.hpp"
#include "difformal/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitParse = 2;
constexpr int kExitResource = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect linear solutions of polynomial ODEs in y(x)"};
  app.require_subcommand(1);
  CLI::App* solve = app.add_subcommand("solve", "Factorize p for each k and solve the linear factors");

  std::string expr, input_file, k_text = "all", mode_text = "common", format_text = "json";
  difformal::RunConfig config;
  auto* expr_opt = solve->add_option("--expr", expr, "Differential polynomial, e.g. \"(y'')^3 - x*y\"");
  auto* file_opt = solve->add_option("--input", input_file, "File holding the polynomial")->check(CLI::ExistingFile);
  expr_opt->excludes(file_opt);
  solve->add_option("--k", k_text, "Target order: all or an integer")->capture_default_str();
  solve->add_option("--mode", mode_text, "common or general")
      ->check(CLI::IsMember({"common", "general"}))
      ->capture_default_str();
  solve->add_option("--free-poly-degree", config.free_poly_degree, "Degree of the free polynomial term")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  solve->add_option("--format", format_text, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  solve->add_flag("--verify", config.verify, "Check every solution by residual sampling");
  solve->add_option("--tol", config.tol, "Residual tolerance")->capture_default_str();
  solve->add_option("--seed", config.seed, "Sampling seed (DIFFORMAL_SEED overrides)")->capture_default_str();
  solve->add_option("--max-pairs", config.limits.max_pairs, "Groebner pair budget")->capture_default_str();
  solve->add_option("--max-degree", config.limits.max_degree, "Groebner degree bound")->capture_default_str();
  solve->add_option("--max-poly-bits", config.limits.max_polynomial_bits, "Groebner polynomial size bound in bits")->capture_default_str();
  solve->add_option("--max-terms", config.limits.max_terms, "Groebner polynomial term bound")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (expr_opt->count() == 0 && file_opt->count() == 0) {
    std::cerr << "error: one of --expr or --input is required\n";
    return kExitConfig;
  }
  if (file_opt->count()) {
    std::ifstream in(input_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    config.input = buf.str();
  } else {
    config.input = expr;
  }

  if (k_text != "all") {
    try {
      std::size_t used = 0;
      config.k = std::stoi(k_text, &used);
      if (used != k_text.size()) throw std::invalid_argument(k_text);
    } catch (const std::exception&) {
      std::cerr << "error: --k expects 'all' or an integer\n";
      return kExitConfig;
    }
  }
  config.mode = mode_text == "general" ? difformal::FactorMode::General : difformal::FactorMode::Common;
  config.format = format_text == "text" ? difformal::OutputFormat::Text : difformal::OutputFormat::Json;
  if (const char* env = std::getenv("DIFFORMAL_SEED")) {
    try {
      config.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: DIFFORMAL_SEED must be a non-negative integer\n";
      return kExitConfig;
    }
  }

  try {
    const difformal::RunResult result = difformal::run(config);
    std::cout << difformal::emit(result, config.format);
  } catch (const difformal::SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const difformal::UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const difformal::ResourceLimit& e) {
    std::cerr << "error: resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
