#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <memory>

#include "json.hpp"
#include "difformal/parser.hpp"
#include "difformal/pipeline.hpp"
#include "support.hpp"

using namespace difformal;
using namespace difformal::testing;

namespace {

RunConfig config_for(const std::string& input) {
  RunConfig c;
  c.input = input;
  c.verify = true;
  c.seed = 42;
  return c;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(DIFFORMAL_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe.release());
  r.exit_code = WEXITSTATUS(status);
  return r;
}

}  // namespace

TEST_CASE("all k for the cubic polynomial") {
  const RunResult r = run(config_for(kCubicSecondDerivative));
  CHECK(r.order == 3);
  REQUIRE(r.results.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(r.results[static_cast<std::size_t>(k)].k == k);
  CHECK(r.families == std::vector<std::string>{"c", "c1*x + c2", "c1*exp(x) - 2*x + c2"});
  for (const auto& kr : r.results) {
    for (const auto& rep : kr.reports) CHECK(rep.passed);
    for (const auto& rec : kr.records) {
      CHECK(rec.verified);
      REQUIRE(rec.worst_residual);
      CHECK(*rec.worst_residual < 1e-8);
    }
  }
  CHECK(r.results[3].solutions.rules.empty());
  CHECK(r.results[2].factors == std::vector<std::string>{"y'' - y' - 2", "y''"});
}

TEST_CASE("quadratic free term at k = 1") {
  RunConfig c = config_for(kPolynomialForcing);
  c.k = 1;
  c.free_poly_degree = 2;
  const RunResult r = run(c);
  REQUIRE(r.results.size() == 1);
  CHECK(r.results[0].solutions.rules.size() == 2);
  CHECK(std::find(r.families.begin(), r.families.end(), "c1*exp(x) + x^2 + 5*x + c2") != r.families.end());
  for (const auto& rec : r.results[0].records) CHECK(rec.verified);
}

TEST_CASE("general mode reports the ideal and no solutions") {
  RunConfig c = config_for(kQuadraticSecondDerivative);
  c.mode = FactorMode::General;
  c.k = 2;
  const RunResult r = run(c);
  REQUIRE(r.results.size() == 1);
  CHECK(r.results[0].records.empty());
  CHECK(r.results[0].ideal.has_value());
  CHECK(r.families.empty());
  const auto j = nlohmann::json::parse(emit(r, OutputFormat::Json));
  CHECK(j["mode"] == "general");
  CHECK(j["results"][0].contains("ideal"));
}

TEST_CASE("input without y") {
  const RunResult r = run(config_for("5"));
  CHECK_FALSE(r.order);
  CHECK(r.results.empty());
  CHECK(r.note == "no y-dependence; no linear factors");
  const auto j = nlohmann::json::parse(emit(r, OutputFormat::Json));
  CHECK(j["results"].empty());
  CHECK(j["order"].is_null());
  CHECK(j["input"] == "5");
}

TEST_CASE("configuration errors") {
  RunConfig c = config_for("y'' + y");
  c.k = 3;
  CHECK_THROWS_AS(run(c), ConfigError);
  c.k = -1;
  CHECK_THROWS_AS(run(c), ConfigError);
  c.k.reset();
  c.free_poly_degree = -1;
  CHECK_THROWS_AS(run(c), ConfigError);
  CHECK_THROWS_AS(run(config_for("y +")), SyntaxError);
}

TEST_CASE("json layout") {
  const std::string text = emit(run(config_for(kCubicSecondDerivative)), OutputFormat::Json);
  const auto j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  CHECK(keys == std::vector<std::string>{"input", "order", "mode", "results", "families"});
  const auto& k2 = j["results"][2];
  CHECK(k2["k"] == 2);
  REQUIRE(k2["S_k"].size() == 2);
  CHECK(k2["S_k"][0].dump() == R"({"W[0,2]":"-2","W[1,2]":"0","W[2,2]":"-1"})");
  CHECK(k2["S_k"][1].dump() == R"({"W[0,2]":"0","W[1,2]":"0","W[2,2]":"0"})");
  CHECK(k2["summand_count"].get<int>() > 0);
  CHECK(k2["remainder_monomials"] == 10);
  CHECK(k2["solutions"][0]["constants"] == 2);
  CHECK(k2["solutions"][0]["verified"] == true);
  CHECK(j["results"][1]["S_k"][0].dump() == R"({"W[0,1]":"free","W[1,1]":"0"})");
  CHECK(emit(run(config_for(kCubicSecondDerivative)), OutputFormat::Json) == text);
}

TEST_CASE("text output") {
  const std::string text = emit(run(config_for(kCubicSecondDerivative)), OutputFormat::Text);
  CHECK(text.find("== k = 2 ==") != std::string::npos);
  CHECK(text.find("y(x) = c1*exp(x) - 2*x + c2") != std::string::npos);
}

TEST_CASE("unverified runs leave residuals empty") {
  RunConfig c = config_for(kCubicSecondDerivative);
  c.verify = false;
  const auto j = nlohmann::json::parse(emit(run(c), OutputFormat::Json));
  CHECK(j["results"][2]["solutions"][0]["worst_residual"].is_null());
  CHECK(j["results"][2]["solutions"][0]["verified"] == false);
}

TEST_CASE("command line exit codes") {
  const CliResult ok = run_cli("solve --expr \"y'' - y\" --verify");
  CHECK(ok.exit_code == 0);
  CHECK(nlohmann::json::parse(ok.out)["order"] == 2);
  CHECK(run_cli("solve --expr \"y'' +\"").exit_code == 2);
  CHECK(run_cli("solve --expr \"z*y\"").exit_code == 2);
  CHECK(run_cli("solve --expr \"y'' - y\" --k 5").exit_code == 1);
  CHECK(run_cli("solve --expr \"y'' - y\" --k two").exit_code == 1);
  CHECK(run_cli("solve --expr \"y'' - y\" --mode other").exit_code == 1);
  CHECK(run_cli("solve").exit_code == 1);
  CHECK(run_cli("solve --expr \"(y'')^3 - 2*y'*(y'')^2\" --max-pairs 1").exit_code == 3);
  CHECK(run_cli("solve --expr \"(y'')^3 - 2*y'*(y'')^2\" --max-terms 1").exit_code == 3);
  CHECK(run_cli("solve --expr \"(y'')^3 - 2*y'*(y'')^2\" --max-poly-bits 1").exit_code == 3);
  const CliResult constant = run_cli("solve --expr 5");
  CHECK(constant.exit_code == 0);
  CHECK(nlohmann::json::parse(constant.out)["note"] == "no y-dependence; no linear factors");
}

TEST_CASE("command line seed handling is deterministic") {
  const std::string args = "solve --expr \"" + kCubicSecondDerivative + "\" --verify --seed 5";
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const CliResult env = run_cli("--help");
  CHECK(env.exit_code == 0);
  const CliResult text = run_cli("solve --expr \"y'' - y' - 2\" --k 2 --format text");
  CHECK(text.out.find("y(x) = c1*exp(x) - 2*x + c2") != std::string::npos);
}

TEST_CASE("property: every emitted solution on random input verifies") {
  Rng rng(81);
  int solutions = 0, limited = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const DiffPoly p = random_diffpoly(rng);
    RunConfig c;
    c.verify = true;
    c.seed = static_cast<std::uint64_t>(trial);
    c.free_poly_degree = rng.uniform_int(0, 1);
    RunResult r;
    try {
      r = run(p, c);
    } catch (const ResourceLimit&) {
      ++limited;
      continue;
    }
    for (const auto& kr : r.results) {
      for (const auto& rep : kr.reports) CHECK_MESSAGE(rep.passed, format_diffpoly(p) << " k=" << kr.k);
      for (const auto& rec : kr.records) {
        CHECK_MESSAGE(rec.verified, format_diffpoly(p) << " k=" << kr.k << ": " << rec.expression);
        CHECK(rec.exact != std::optional<bool>(false));
        ++solutions;
      }
    }
  }
  CHECK(solutions > 100);
  CHECK(limited < 12);
}
