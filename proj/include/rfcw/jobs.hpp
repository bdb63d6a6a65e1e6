#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rfcw/field_model.hpp"
#include "rfcw/numerics.hpp"

namespace rfcw {

// Configuration problem (bad JSON, missing keys, invalid ranges). The CLI
// maps this to exit code 2.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int points = 2;
};

struct JobConfig {
  std::string command;  // rate-curve | phase-scan | verify | fields
  std::optional<FieldModel> model;
  double beta = 1.0;
  // Verify-only: evaluate the theoretical rate at a different beta
  // (negative-control knob); 0 means "same as beta".
  double theory_beta = 0.0;
  GridSpec x_grid{-1.05, 1.05, 211};
  GridSpec beta_range{0.5, 2.0, 16};
  GridSpec h_range{0.0, 0.5, 11};
  bool critical_line = false;
  std::string format = "csv";  // phase-scan: csv | json
  Interval set{0.3, 1.0};
  std::vector<std::size_t> n_list{100, 400, 1600};
  std::vector<std::uint64_t> seeds{11, 12, 13, 14, 15, 16};
  double max_deviation = 0.03;
  std::string out;  // empty: stdout
};

// Parses and validates; the command must be set in the JSON ("command")
// or supplied by the caller beforehand via the `command` argument.
JobConfig parse_job_config(const nlohmann::json& j,
                           const std::string& command);

struct JobResult {
  std::string output;   // CSV/JSON payload for the --out target
  std::string summary;  // human-readable notes (verify), empty otherwise
  bool ok = true;       // false: acceptance tolerance violated (exit 1)
};

JobResult run_rate_curve(const JobConfig& config);
JobResult run_phase_scan(const JobConfig& config);
JobResult run_verify(const JobConfig& config);
JobResult run_fields(const JobConfig& config);

JobResult run_job(const JobConfig& config);

}  // namespace rfcw
