#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "zbsim/scenario.hpp"

namespace fs = std::filesystem;

namespace {

bool write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon zitterbewegung simulator"};
  std::string config_path;
  std::string out_dir = ".";
  app.add_option("--config", config_path, "Scenario config file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();

  zbsim::ScenarioConfig config;
  try {
    config = zbsim::parse_config(text.str());
  } catch (const zbsim::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return 2;
  }

  const auto result = zbsim::run_scenario(config);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "cannot create " << out_dir << ": " << ec.message() << "\n";
    return 2;
  }
  bool written = write_file(fs::path(out_dir) / config.report, result.report);
  if (result.csv) written = written && write_file(fs::path(out_dir) / config.csv, *result.csv);
  if (!written) {
    std::cerr << "cannot write output to " << out_dir << "\n";
    return 2;
  }
  std::cout << result.report;
  return result.exit_status;
}
