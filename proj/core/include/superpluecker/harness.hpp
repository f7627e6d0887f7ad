#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "superpluecker/error.hpp"

namespace superpluecker {

/// Bad command line or configuration (exit code 2).
class UsageError : public Error {
public:
  using Error::Error;
};

struct RunConfig {
  /// "verify", "exchange-graph" or "triangulations".
  std::string command = "verify";
  /// Suite for "verify": berezinian, wrong-matrix, pluecker, cluster-walk, ptolemy.
  std::string suite;
  std::optional<int> n, r, s, m;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::optional<unsigned> generators;  ///< overrides the per-check default N
  std::string out;                     ///< export path (exchange-graph)
  std::string format = "json";         ///< dot | json
  std::string case_;                   ///< pluecker: "2|0", "r|0", "r|1"; empty = all
  std::size_t steps = 1000;            ///< cluster-walk length
  bool unsafe = false;                 ///< lift the n <= 12, r <= 4 caps
};

struct Failure {
  std::size_t trial = 0;
  std::string check_id;
  std::string detail;
};

struct VerificationReport {
  std::string command;  ///< echo, e.g. "verify ptolemy --trials 100 --seed 7"
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::map<std::string, std::size_t> checks;  ///< instances evaluated per check id
  std::map<std::string, std::size_t> skips;   ///< instances not evaluable (e.g. singular block)
  std::vector<Failure> failures;
  std::string details = "{}";  ///< suite-specific JSON object
  double elapsed_ms = 0;

  int exit_code() const { return failures.empty() ? 0 : 1; }
};

/// Validates the configuration (throws UsageError) and runs it. Every trial
/// draws from its own Rng seeded by derive_seed, so the report depends only on
/// the configuration. Side effect: writes the export to config.out if set.
VerificationReport run(const RunConfig& config);

/// Report as JSON. With include_elapsed = false the output is a pure function
/// of the configuration.
std::string report_to_json(const VerificationReport& report, bool include_elapsed = true);

/// Command echo used in reports.
std::string command_line(const RunConfig& config);

}  // namespace superpluecker
