#include "zbsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "zbsim/constraint.hpp"
#include "zbsim/suite.hpp"

namespace zbsim {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  if (used != value.size() || !std::isfinite(out)) throw ConfigError(key + ": expected a number, got '" + value + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_real(key, value);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + ": expected an integer, got '" + value + "'");
  return static_cast<int>(v);
}

IntTriple parse_triple(const std::string& key, std::string value) {
  if (!value.empty() && value.front() == '(') {
    if (value.back() != ')') throw ConfigError(key + ": unbalanced parentheses");
    value = value.substr(1, value.size() - 2);
  }
  std::vector<std::string> parts;
  std::stringstream in(value);
  std::string part;
  while (std::getline(in, part, ',')) parts.push_back(trim(part));
  if (parts.size() != 3) throw ConfigError(key + ": expected three components");
  IntTriple out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double v = parse_real(key, parts[i]);
    if (v != std::floor(v)) throw ConfigError(key + ": not a lattice vector (components must be integers)");
    out[i] = static_cast<int>(v);
  }
  return out;
}

int max_abs(const IntTriple& n) { return std::max({std::abs(n[0]), std::abs(n[1]), std::abs(n[2])}); }

bool in_cutoff(const IntTriple& n, int n_max) { return n != IntTriple{0, 0, 0} && max_abs(n) <= n_max; }

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.10e", v);
  return buffer;
}

std::string fmt_vector(const Eigen::Vector3d& v) { return fmt(v(0)) + " " + fmt(v(1)) + " " + fmt(v(2)); }

void validate(const ScenarioConfig& c) {
  if (!(c.side_length > 0.0)) throw ConfigError("geometry.L must be positive");
  if (c.n_max < 1) throw ConfigError("geometry.n_max must be at least 1");
  if (c.grid_points < 2 * c.n_max + 2) throw ConfigError("geometry.N must be at least 2*n_max+2");
  if (c.occupation_cap < 1 || c.occupation_cap > 6) throw ConfigError("fock.N_tot must be in 1..6");
  if (!(c.norm_tol > 0.0)) throw ConfigError("fock.norm_tol must be positive");
  if (!(c.constraint_tol > 0.0)) throw ConfigError("fock.constraint_tol must be positive");
  if (!(c.null_rel_tol > 0.0)) throw ConfigError("fock.null_rel_tol must be positive");
  if (c.time_count < 2) throw ConfigError("scenario.times.count must be at least 2");
  if (!(c.time_periods > 0.0)) throw ConfigError("scenario.times.periods must be positive");
  const bool two_photon = c.kind == ScenarioKind::manual_admixture || c.kind == ScenarioKind::gravity_zb;
  if (two_photon && c.occupation_cap < 2) throw ConfigError("fock.N_tot must be at least 2 for this scenario");
  if (two_photon && !in_cutoff(c.p, c.n_max)) throw ConfigError("scenario.p: not a mode within the cutoff");
  if (c.kind == ScenarioKind::gravity_zb) {
    if (c.h_kind == PerturbationKind::cosine && c.q == IntTriple{0, 0, 0}) {
      throw ConfigError("scenario.q: must be a nonzero lattice vector");
    }
    const IntTriple partner{c.q[0] - c.p[0], c.q[1] - c.p[1], c.q[2] - c.p[2]};
    if (!in_cutoff(partner, c.n_max)) throw ConfigError("scenario.q: -p+q must be a nonzero mode within the cutoff");
    if (c.grid_points <= 2 * c.n_max + max_abs(c.q)) {
      throw ConfigError("scenario.q: grid too coarse, need geometry.N > 2*n_max + max|q_i|");
    }
    if (!(std::abs(c.eps_h) <= 0.1)) throw ConfigError("scenario.eps_h must satisfy |eps_h| <= 0.1");
  }
}

struct Context {
  explicit Context(const ScenarioConfig& c)
      : modes(make_mode_set(make_geometry(c.side_length, c.grid_points), c.n_max)),
        space(modes, c.occupation_cap),
        fields(modes),
        closed(momentum_closed_form(fields)) {}
  ModeSet modes;
  FockSpace space;
  FieldModel fields;
  MomentumDecomposition closed;
};

std::uint32_t mode(std::size_t k, int s) { return static_cast<std::uint32_t>(FockSpace::mode_id(k, s)); }

void write_summary(std::ostringstream& out, const ZbSummary& s) {
  out << "omega: " << fmt(s.omega) << "\n";
  out << "zb_frequency: " << fmt(s.zb_frequency) << "\n";
  out << "zb_amplitude: " << fmt(s.zb_amplitude) << "\n";
  out << "direction_cosine: " << fmt(s.direction_cosine) << "\n";
  out << "eps_h: " << fmt(s.eps_h) << "\n";
}

double max_im(const TimeSeries& series) {
  double worst = 0.0;
  for (double v : series.im_residual) worst = std::max(worst, v);
  return worst;
}

ScenarioResult run_verify(const ScenarioConfig& c) {
  SuiteOptions options;
  options.norm_tol = c.norm_tol;
  options.constraint_tol = c.constraint_tol;
  options.null_rel_tol = c.null_rel_tol;
  ScenarioResult result;
  std::ostringstream out;
  out << "scenario: verify\n";
  bool all = true;
  for (const auto& r : run_suite(options)) {
    out << format_result(r) << "\n";
    all = all && r.passed;
  }
  out << "result: " << (all ? "all properties pass" : "failures present") << "\n";
  result.report = out.str();
  result.exit_status = all ? 0 : 1;
  return result;
}

ScenarioResult run_physical(const ScenarioConfig& c) {
  Context ctx(c);
  const auto grouped = group_by_frequency(ctx.closed);
  const auto subspace = physical_subspace(ctx.space, c.null_rel_tol);
  std::ostringstream out;
  out << "scenario: physical_momentum\n";
  out << "physical_basis_size: " << subspace.size() << "\n";
  out << "# index sector eta_norm Jx Jy Jz drift\n";
  std::size_t zero_norm = 0;
  double worst_drift = 0.0;
  double worst_constraint = 0.0;
  for (std::size_t i = 0; i < subspace.size(); ++i) {
    const auto psi = subspace.vector(i);
    worst_constraint = std::max(worst_constraint, is_physical(ctx.space, psi, c.constraint_tol).max_residual);
    const double norm = eta_inner(ctx.space, psi, psi).real();
    if (std::abs(norm) <= c.norm_tol) {
      ++zero_norm;
      continue;
    }
    const auto profile = momentum_profile(ctx.space, grouped, psi, c.norm_tol);
    const Eigen::Vector3cd j0 = profile.at(0.0);
    double drift = 0.0;
    for (int n = 1; n <= 16; ++n) drift = std::max(drift, (profile.at(0.37 * n) - j0).cwiseAbs().maxCoeff());
    worst_drift = std::max(worst_drift, drift);
    out << i << " " << subspace.sector_of(i) << " " << fmt(norm) << " " << fmt_vector(j0.real()) << " " << fmt(drift)
        << "\n";
  }
  out << "zero_norm_vectors: " << zero_norm << "\n";
  out << "max_constraint_residual: " << fmt(worst_constraint) << "\n";
  out << "max_time_drift: " << fmt(worst_drift) << "\n";
  ScenarioResult result;
  result.exit_status = (worst_drift <= 1e-12 && worst_constraint <= c.constraint_tol) ? 0 : 1;
  result.report = out.str();
  return result;
}

ScenarioResult run_manual(const ScenarioConfig& c) {
  Context ctx(c);
  const auto p = *ctx.modes.find(c.p);
  const auto minus_p = ctx.modes.negated(p);
  const auto psi = vacuum(ctx.space) + cd(c.theta) * basis_state(ctx.space, {mode(p, 1), mode(minus_p, 3)});
  const double omega = ctx.modes[p].omega;
  const auto times = zb_sample_times(omega, c.time_count, c.time_periods);
  const auto response = zb_response(ctx.space, ctx.closed, psi, times, omega, 0.0, c.norm_tol);
  std::ostringstream out;
  out << "scenario: manual_admixture\n";
  out << "theta: " << fmt(c.theta) << "\n";
  write_summary(out, response.summary);
  out << "max_im_residual: " << fmt(max_im(response.series)) << "\n";
  ScenarioResult result;
  result.exit_status = max_im(response.series) <= 1e-10 ? 0 : 1;
  result.report = out.str();
  result.csv = format_csv(response.series);
  return result;
}

ScenarioResult run_gravity(const ScenarioConfig& c) {
  Context ctx(c);
  const auto p = *ctx.modes.find(c.p);
  const auto partner = *ctx.modes.find({c.q[0] - c.p[0], c.q[1] - c.p[1], c.q[2] - c.p[2]});
  const auto h = build_h00(ctx.modes.geometry(), c.h_kind, c.eps_h, c.q);
  const auto constraints = perturbed_constraint(ctx.fields, h);
  const auto subspace = perturbed_physical_states(ctx.space, constraints, c.null_rel_tol);
  const auto target = cd(c.alpha) * vacuum(ctx.space) + cd(c.beta) * basis_state(ctx.space, {mode(p, 1), mode(partner, 1)});
  const auto psi = subspace.project(target);
  const double mode_residual = constraint_report(ctx.space, constraints.rows, psi, c.constraint_tol).max_residual;
  const auto oracle = position_space_residual(ctx.space, ctx.fields, h, psi);
  const double omega = ctx.modes[p].omega;
  const auto times = zb_sample_times(omega, c.time_count, c.time_periods);
  const auto response = zb_response(ctx.space, ctx.closed, psi, times, omega, c.eps_h, c.norm_tol);

  std::ostringstream out;
  out << "scenario: gravity_zb\n";
  out << "alpha: " << fmt(c.alpha) << "\n";
  out << "beta: " << fmt(c.beta) << "\n";
  write_summary(out, response.summary);
  out << "max_im_residual: " << fmt(max_im(response.series)) << "\n";
  out << "mode_constraint_residual: " << fmt(mode_residual) << "\n";
  out << "position_constraint_residual: " << fmt(oracle.band_limited) << "\n";
  out << "out_of_band_remainder: " << fmt(oracle.out_of_band) << "\n";
  out << "note: the correction term uses ln(1+h00) ~ h00; writing the covariant divergence through ln sqrt|g| "
         "instead of ln|g| would halve it\n";
  out << "note: constraints imposed at t = 0 on the spatial Fourier components of the mode set\n";
  ScenarioResult result;
  const bool ok = max_im(response.series) <= 1e-10 && mode_residual <= c.constraint_tol &&
                  oracle.band_limited <= c.constraint_tol;
  result.exit_status = ok ? 0 : 1;
  result.report = out.str();
  result.csv = format_csv(response.series);
  return result;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c;
  std::map<std::string, std::pair<std::string, int>> entries;
  int line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto body = trim(line);
    if (body.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_number) + ": expected key = value", line_number);
    const auto key = trim(std::string_view(body).substr(0, eq));
    const auto value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_number) + ": missing key", line_number);
    if (value.empty()) throw ConfigError("line " + std::to_string(line_number) + ": missing value for " + key, line_number);
    const bool valid = std::all_of(key.begin(), key.end(), [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.';
    });
    if (!valid) throw ConfigError("line " + std::to_string(line_number) + ": invalid key '" + key + "'", line_number);
    if (entries.count(key)) throw ConfigError("line " + std::to_string(line_number) + ": duplicate key " + key, line_number);
    entries[key] = {value, line_number};
    if (end == text.size()) break;
  }

  bool have_kind = false;
  for (const auto& [key, entry] : entries) {
    const auto& value = entry.first;
    if (key == "geometry.L") c.side_length = parse_real(key, value);
    else if (key == "geometry.N") c.grid_points = parse_int(key, value);
    else if (key == "geometry.n_max") c.n_max = parse_int(key, value);
    else if (key == "fock.N_tot") c.occupation_cap = parse_int(key, value);
    else if (key == "fock.norm_tol") c.norm_tol = parse_real(key, value);
    else if (key == "fock.constraint_tol") c.constraint_tol = parse_real(key, value);
    else if (key == "fock.null_rel_tol") c.null_rel_tol = parse_real(key, value);
    else if (key == "scenario.kind") {
      static const std::map<std::string, ScenarioKind> kinds{{"verify", ScenarioKind::verify},
                                                             {"physical_momentum", ScenarioKind::physical_momentum},
                                                             {"manual_admixture", ScenarioKind::manual_admixture},
                                                             {"gravity_zb", ScenarioKind::gravity_zb}};
      const auto it = kinds.find(value);
      if (it == kinds.end()) throw ConfigError("scenario.kind: unknown scenario '" + value + "'", entry.second);
      c.kind = it->second;
      have_kind = true;
    } else if (key == "scenario.p") c.p = parse_triple(key, value);
    else if (key == "scenario.q") c.q = parse_triple(key, value);
    else if (key == "scenario.theta") c.theta = parse_real(key, value);
    else if (key == "scenario.alpha") c.alpha = parse_real(key, value);
    else if (key == "scenario.beta") c.beta = parse_real(key, value);
    else if (key == "scenario.eps_h") c.eps_h = parse_real(key, value);
    else if (key == "scenario.h_kind") {
      if (value == "cosine") c.h_kind = PerturbationKind::cosine;
      else if (value == "uniform_gradient") c.h_kind = PerturbationKind::uniform_gradient;
      else throw ConfigError("scenario.h_kind: unknown perturbation '" + value + "'", entry.second);
    } else if (key == "scenario.times.count") c.time_count = parse_int(key, value);
    else if (key == "scenario.times.periods") c.time_periods = parse_real(key, value);
    else if (key == "output.csv") c.csv = value;
    else if (key == "output.report") c.report = value;
    else throw ConfigError("unknown key " + key + " (line " + std::to_string(entry.second) + ")", entry.second);
  }
  if (!have_kind) throw ConfigError("scenario.kind required");
  validate(c);
  return c;
}

std::string format_csv(const TimeSeries& series) {
  std::string out = "t,Jx,Jy,Jz,Im_residual\n";
  char buffer[160];
  for (std::size_t n = 0; n < series.t.size(); ++n) {
    const auto& j = series.j[n];
    std::snprintf(buffer, sizeof buffer, "%.15e,%.15e,%.15e,%.15e,%.6e\n", series.t[n], j(0), j(1), j(2),
                  series.im_residual[n]);
    out += buffer;
  }
  return out;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  validate(config);
  try {
    switch (config.kind) {
      case ScenarioKind::verify:
        return run_verify(config);
      case ScenarioKind::physical_momentum:
        return run_physical(config);
      case ScenarioKind::manual_admixture:
        return run_manual(config);
      case ScenarioKind::gravity_zb:
        return run_gravity(config);
    }
  } catch (const ZeroNormState& e) {
    return {3, std::string("error: ") + e.what() + "\n", std::nullopt};
  } catch (const EmptyKernel& e) {
    return {3, std::string("error: ") + e.what() + "\n", std::nullopt};
  } catch (const std::invalid_argument& e) {
    return {2, std::string("error: ") + e.what() + "\n", std::nullopt};
  }
  return {2, "error: unknown scenario\n", std::nullopt};
}

}  // namespace zbsim
