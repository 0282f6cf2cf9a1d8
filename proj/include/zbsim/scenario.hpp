#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "zbsim/gravity.hpp"
#include "zbsim/lattice.hpp"
#include "zbsim/momentum.hpp"

namespace zbsim {

enum class ScenarioKind { verify, physical_momentum, manual_admixture, gravity_zb };

struct ScenarioConfig {
  double side_length = 6.283185307179586;
  int grid_points = 4;
  int n_max = 1;

  int occupation_cap = 2;
  double norm_tol = 1e-10;
  double constraint_tol = 1e-10;
  double null_rel_tol = 1e-9;

  ScenarioKind kind = ScenarioKind::verify;
  IntTriple p{1, 0, 0};
  IntTriple q{1, 1, 0};
  double theta = 0.1;
  double alpha = 1.0;
  double beta = 0.5;
  double eps_h = 1e-2;
  PerturbationKind h_kind = PerturbationKind::cosine;
  int time_count = 256;
  double time_periods = 4.0;

  std::string csv = "series.csv";
  std::string report = "report.txt";
};

/// Syntax errors carry the line number; semantic errors name the key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0) : std::runtime_error(message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

ScenarioConfig parse_config(std::string_view text);

struct ScenarioResult {
  int exit_status = 0;
  std::string report;
  std::optional<std::string> csv;
};

/// Runs a scenario without touching the file system.
ScenarioResult run_scenario(const ScenarioConfig& config);

std::string format_csv(const TimeSeries& series);

}  // namespace zbsim
