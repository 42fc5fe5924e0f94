#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "kstar/poly.hpp"

namespace kstar {

inline constexpr const char* kEngineVersion = "kstar 1.0.0";
inline constexpr const char* kReportSchema = "kstar.report/1";

/// Small random polynomial for sweeps: up to `max_terms` terms of degree
/// <= max_degree with small Gaussian-rational coefficients. Uses raw engine
/// output only, so sequences are identical on every platform.
Poly random_poly(std::mt19937_64& rng, const TablePtr& table, unsigned max_degree, unsigned max_terms = 3);

struct CheckResult {
  std::string name;
  bool pass = true;
  std::size_t checked = 0;
  /// First failing instance, empty on success.
  std::string witness;
};

struct SuiteOptions {
  int dimension = 2;
  unsigned degree = 4;
  std::uint64_t seed = 1;
  unsigned samples = 200;
  unsigned cutoff = 3;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  bool pass() const;
};

const std::vector<std::string>& suite_names();

/// Throws Error for an unknown suite.
SuiteResult run_suite(const std::string& suite, const SuiteOptions& options);

/// The `kstar` command line: args exclude the program name.
/// Returns 0 when every check passes, 1 on a mathematical failure and 2 on
/// usage or parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kstar
