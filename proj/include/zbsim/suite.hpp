#pragma once

#include <functional>
#include <string>
#include <vector>

namespace zbsim {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteOptions {
  double norm_tol = 1e-10;
  double constraint_tol = 1e-10;
  double null_rel_tol = 1e-9;
  /// Runs the scenario CLI on a config file into a directory and returns its
  /// CSV bytes; unset means the determinism check calls run_scenario twice.
  std::function<std::string(const std::string& config_text, int run)> external_run;
};

CriterionResult check_polarization(const SuiteOptions& options);
CriterionResult check_commutators(const SuiteOptions& options);
CriterionResult check_fields(const SuiteOptions& options);
CriterionResult check_oracle_equivalence(const SuiteOptions& options);
CriterionResult check_physical_vanishing(const SuiteOptions& options);
CriterionResult check_admixture(const SuiteOptions& options);
CriterionResult check_gauge_invariance(const SuiteOptions& options);
CriterionResult check_gravity(const SuiteOptions& options);
CriterionResult check_determinism(const SuiteOptions& options);

std::vector<CriterionResult> run_suite(const SuiteOptions& options);

/// "criterion N [PASS] name: detail"
std::string format_result(const CriterionResult& result);

}  // namespace zbsim
