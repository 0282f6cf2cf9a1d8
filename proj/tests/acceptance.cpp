#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zbsim/suite.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream bytes;
  bytes << in.rdbuf();
  return bytes.str();
}

}  // namespace

// Usage: acceptance [CLI_PATH WORK_DIR]
int main(int argc, char** argv) {
  zbsim::SuiteOptions options;
  if (argc >= 3) {
    const std::string cli = argv[1];
    const fs::path work = argv[2];
    int config_id = 0;
    options.external_run = [cli, work, config_id](const std::string& text, int run) mutable {
      if (run == 0) ++config_id;
      const fs::path dir = work / ("config" + std::to_string(config_id)) / ("run" + std::to_string(run));
      fs::remove_all(dir);
      fs::create_directories(dir);
      const fs::path config = dir / "scenario.cfg";
      std::ofstream(config) << text;
      const std::string command = "\"" + cli + "\" --config \"" + config.string() + "\" --out \"" + dir.string() +
                                  "\" > \"" + (dir / "stdout.txt").string() + "\"";
      if (std::system(command.c_str()) != 0) return std::string();
      return read_file(dir / "series.csv");
    };
  }

  bool all = true;
  using checker = zbsim::CriterionResult (*)(const zbsim::SuiteOptions&);
  const checker checks[] = {zbsim::check_polarization,       zbsim::check_commutators,
                            zbsim::check_fields,             zbsim::check_oracle_equivalence,
                            zbsim::check_physical_vanishing, zbsim::check_admixture,
                            zbsim::check_gauge_invariance,   zbsim::check_gravity,
                            zbsim::check_determinism};
  for (auto check : checks) {
    const auto start = std::chrono::steady_clock::now();
    const auto result = check(options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, " (%.1f s)", seconds);
    std::cout << zbsim::format_result(result) << timing << std::endl;
    all = all && result.passed;
  }
  std::cout << (all ? "all criteria pass" : "some criteria fail") << std::endl;
  return all ? 0 : 1;
}
