#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "zbsim/scenario.hpp"

using namespace zbsim;

namespace {

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_text(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

double report_value(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ": ", 0) == 0) return std::stod(line.substr(key.size() + 2));
  }
  return std::nan("");
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(
      "# comment\n"
      "geometry.L = 6.283185307179586\n"
      "geometry.N = 6   # trailing\n"
      "geometry.n_max = 2\n"
      "scenario.kind = gravity_zb\n"
      "scenario.p = (1, 0, 0)\n"
      "scenario.q = 1,1,0\n"
      "scenario.eps_h = -0.05\n"
      "scenario.times.count = 32\n"
      "output.csv = out.csv\n");
  CHECK(c.grid_points == 6);
  CHECK(c.n_max == 2);
  CHECK(c.kind == ScenarioKind::gravity_zb);
  CHECK(c.q == IntTriple{1, 1, 0});
  CHECK(c.eps_h == -0.05);
  CHECK(c.time_count == 32);
  CHECK(c.csv == "out.csv");
  CHECK(c.report == "report.txt");
}

TEST_CASE("config errors") {
  CHECK(error_text("geometry.N = 4\n") == "scenario.kind required");
  CHECK(error_line("scenario.kind = verify\nbroken line\n") == 2);
  CHECK(error_line("scenario.kind = verify\nscenario.kind = verify\n") == 2);
  CHECK(error_line("scenario.kind = verify\n\nfoo.bar = 1\n") == 3);
  CHECK(error_text("scenario.kind = gravity_zb\nscenario.q = (0.5, 0, 0)\n").find("scenario.q") == 0);
  CHECK(error_text("scenario.kind = gravity_zb\nscenario.q = (3, 0, 0)\n").find("scenario.q") == 0);
  CHECK(error_text("scenario.kind = manual_admixture\nscenario.p = (2, 0, 0)\n").find("scenario.p") == 0);
  CHECK(error_text("scenario.kind = verify\ngeometry.N = 3\n").find("geometry.N") == 0);
  CHECK(error_text("scenario.kind = gravity_zb\nscenario.eps_h = 0.2\n").find("scenario.eps_h") == 0);
  CHECK(error_text("scenario.kind = manual_admixture\nfock.N_tot = 1\n").find("fock.N_tot") == 0);
  CHECK(error_text("scenario.kind = dance\n").find("scenario.kind") == 0);
  CHECK(error_text("scenario.kind = verify\ngeometry.n_max = x\n").find("geometry.n_max") == 0);
}

TEST_CASE("manual admixture scenario") {
  const auto result = run_scenario(parse_config("scenario.kind = manual_admixture\nscenario.p = (0, 0, 1)\n"));
  CHECK(result.exit_status == 0);
  REQUIRE(result.csv);
  CHECK(result.csv->rfind("t,Jx,Jy,Jz,Im_residual\n", 0) == 0);
  CHECK(std::count(result.csv->begin(), result.csv->end(), '\n') == 257);
  CHECK(report_value(result.report, "omega") == doctest::Approx(1.0));
  CHECK(report_value(result.report, "zb_frequency") == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(report_value(result.report, "direction_cosine") <= 1e-10);
}

TEST_CASE("gravity scenario") {
  const auto flat = run_scenario(parse_config("scenario.kind = gravity_zb\nscenario.eps_h = 0\n"));
  CHECK(flat.exit_status == 0);
  CHECK(report_value(flat.report, "zb_amplitude") <= 1e-12);

  const auto bent = run_scenario(parse_config("scenario.kind = gravity_zb\nscenario.eps_h = 0.01\n"));
  CHECK(bent.exit_status == 0);
  CHECK(report_value(bent.report, "zb_amplitude") > 1e-4);
  CHECK(report_value(bent.report, "zb_frequency") == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(report_value(bent.report, "position_constraint_residual") <= 1e-10);
  CHECK(report_value(bent.report, "eps_h") == 0.01);
}

TEST_CASE("non-periodic perturbation is rejected") {
  const auto result = run_scenario(parse_config("scenario.kind = gravity_zb\nscenario.h_kind = uniform_gradient\n"));
  CHECK(result.exit_status != 0);
}

TEST_CASE("geometry keys map directly") {
  const auto c = parse_config("geometry.L = 6.2832\ngeometry.N = 8\nscenario.kind = verify\n");
  CHECK(c.side_length == doctest::Approx(2 * 3.14159265358979).epsilon(1e-4));
  CHECK(c.grid_points == 8);
  CHECK(c.kind == ScenarioKind::verify);
}
