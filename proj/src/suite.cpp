#include "zbsim/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "zbsim/constraint.hpp"
#include "zbsim/gravity.hpp"
#include "zbsim/scenario.hpp"

namespace zbsim {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

std::string sci(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2e", v);
  return buffer;
}

std::uint32_t mode(std::size_t k, int s) { return static_cast<std::uint32_t>(FockSpace::mode_id(k, s)); }

Vector3c plain_cross(const Vector3c& a, const Vector3c& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

struct Model {
  Model(int n_max, int grid_points, int cap)
      : modes(make_mode_set(make_geometry(two_pi, grid_points), n_max)), space(modes, cap), fields(modes) {}
  ModeSet modes;
  FockSpace space;
  FieldModel fields;
};

double mean_omega(const ModeSet& modes) {
  double sum = 0.0;
  for (const auto& m : modes) sum += m.omega;
  return sum / static_cast<double>(modes.size());
}

double vector_gap(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) { return (a - b).cwiseAbs().maxCoeff(); }

CriterionResult make(int id, const char* name, bool passed, std::string detail) {
  return {id, name, passed, std::move(detail)};
}

}  // namespace

CriterionResult check_polarization(const SuiteOptions&) {
  const auto modes = make_mode_set(make_geometry(two_pi, 6), 2);
  const double tol = 1e-12;
  double worst = 0.0;
  for (const auto& m : modes) {
    const auto basis = circular_basis(m);
    const Eigen::Vector3cd khat = m.k.normalized().cast<cd>();
    const int helicities[3] = {1, -1, 0};
    for (int a : helicities) {
      for (int b : helicities) {
        const cd inner = basis.eps(a).adjoint() * basis.eps(b);
        worst = std::max(worst, std::abs(inner - cd(a == b ? 1.0 : 0.0)));
      }
    }
    worst = std::max(worst, (basis.eps(1) - basis.eps(-1).conjugate()).cwiseAbs().maxCoeff());
    worst = std::max(worst, (basis.eps(0) - khat).cwiseAbs().maxCoeff());
    for (int lambda : {1, -1}) {
      const auto& e = basis.eps(lambda);
      worst = std::max(worst, std::abs(cd(khat.transpose() * e)));
      const Vector3c lhs = cd(0, 1) * plain_cross(m.k.cast<cd>(), e);
      worst = std::max(worst, (lhs - cd(lambda * m.k.norm()) * e).cwiseAbs().maxCoeff());
    }
    // k_mu e^mu: zero for transverse, -|k| for longitudinal, omega for timelike
    const double expected[4] = {m.omega, 0.0, 0.0, -m.k.norm()};
    for (int s = 0; s < 4; ++s) {
      worst = std::max(worst, std::abs(contract_with_wavevector(m, four_polarization(m, s)) - expected[s]));
    }
  }
  const double h = std::sqrt(0.5);
  const auto z = circular_basis(Eigen::Vector3d(0, 0, 1));
  const bool exact = z.eps(1) == Vector3c(h, cd(0, h), 0) && z.eps(-1) == Vector3c(h, cd(0, -h), 0);
  return make(1, "polarization suite", worst <= tol && exact,
              std::to_string(modes.size()) + " modes (n_max 2), max deviation " + sci(worst) + ", k||z exact " +
                  (exact ? "yes" : "no"));
}

CriterionResult check_commutators(const SuiteOptions&) {
  const auto geometry = make_geometry(two_pi, 4);
  const ModeSet modes(geometry, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  const FockSpace space(modes, 2);
  double b_worst = 0.0;
  std::vector<OperatorMatrix> b;
  std::vector<OperatorMatrix> bd;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    for (int s = 0; s < 4; ++s) {
      b.push_back(ladder_b(space, k, s));
      bd.push_back(dagger(space, b.back()));
    }
  }
  const auto one = identity(space);
  for (std::size_t a = 0; a < b.size(); ++a) {
    for (std::size_t c = 0; c < b.size(); ++c) {
      const double expected = a == c ? FockSpace::commutator_sign(a) : 0.0;
      // [b_a, dagger(b_c)] = -eta_aa delta_ac
      b_worst = std::max(b_worst, max_abs_interior(space, commutator(b[a], bd[c]) - cd(expected) * one));
      b_worst = std::max(b_worst, max_abs_interior(space, commutator(b[a], b[c])));
    }
  }
  double a_worst = 0.0;
  double scalar_worst = 0.0;
  std::vector<std::pair<std::size_t, int>> labels;
  std::vector<OperatorMatrix> a_ops;
  std::vector<OperatorMatrix> a_dag;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    for (int lambda : {1, -1, 0}) {
      labels.push_back({k, lambda});
      a_ops.push_back(combine_a(space, k, lambda));
      a_dag.push_back(dagger(space, a_ops.back()));
    }
  }
  for (std::size_t i = 0; i < a_ops.size(); ++i) {
    for (std::size_t j = 0; j < a_ops.size(); ++j) {
      const bool scalar_pair = labels[i].second == 0 && labels[j].second == 0;
      const double delta = (i == j && !scalar_pair) ? 1.0 : 0.0;
      const double dev = max_abs_interior(space, commutator(a_ops[i], a_dag[j]) - cd(delta) * one);
      if (scalar_pair) scalar_worst = std::max(scalar_worst, dev);
      else a_worst = std::max(a_worst, dev);
      a_worst = std::max(a_worst, max_abs_interior(space, commutator(a_ops[i], a_ops[j])));
    }
  }
  const double tol = 1e-14;
  const bool ok = b_worst <= tol && a_worst <= tol && scalar_worst <= tol;
  return make(2, "commutator suite", ok,
              "b algebra " + sci(b_worst) + ", helicity algebra " + sci(a_worst) + ", [a(k,0), a+(k',0)] " +
                  sci(scalar_worst) + " on the cutoff interior (" + std::to_string(space.dimension()) + " states)");
}

CriterionResult check_fields(const SuiteOptions&) {
  double build_gap = 0.0;
  double maxwell = 0.0;
  for (const auto& [n_max, grid] : {std::pair{1, 4}, std::pair{2, 6}}) {
    const Model m(n_max, grid, 2);
    const auto e_pot = m.fields.electric_from_potential();
    const auto b_pot = m.fields.magnetic_from_potential();
    for (double t : {0.0, 0.7}) {
      for (std::size_t x = 0; x < m.modes.geometry().point_count(); ++x) {
        const auto point = m.modes.geometry().point(x);
        for (int c = 0; c < 3; ++c) {
          build_gap = std::max(build_gap, max_entry(m.fields.electric().at(c, point, t) - e_pot.at(c, point, t), m.space));
          build_gap = std::max(build_gap, max_entry(m.fields.magnetic().at(c, point, t) - b_pot.at(c, point, t), m.space));
        }
      }
      maxwell = std::max(maxwell, maxwell_residual(m.space, m.fields, t));
    }
  }
  const double tol = 1e-10;
  return make(3, "field consistency", build_gap <= tol && maxwell <= tol,
              "mode build vs potential " + sci(build_gap) + ", Maxwell residual " + sci(maxwell) +
                  " (n_max 1 and 2, every grid point, t = 0, 0.7)");
}

CriterionResult check_oracle_equivalence(const SuiteOptions&) {
  double worst = 0.0;
  double offset = 0.0;
  for (const auto& [n_max, grid] : {std::pair{1, 4}, std::pair{2, 6}}) {
    const Model m(n_max, grid, 2);
    const auto closed = momentum_closed_form(m.fields);
    const double omega = mean_omega(m.modes);
    for (double t : {0.0, 0.3 / omega, 1.7 / omega}) {
      const auto cmp = compare_operators(m.space, closed.at(t), momentum_oracle(m.fields, t));
      worst = std::max(worst, cmp.max_entry);
      offset = std::max(offset, cmp.constant_offset.cwiseAbs().maxCoeff());
    }
  }
  return make(4, "oracle equivalence", worst <= 1e-10,
              "max entry difference " + sci(worst) + " (n_max 1 and 2, three times), c-number offset " + sci(offset));
}

CriterionResult check_physical_vanishing(const SuiteOptions& options) {
  const Model m(1, 4, 2);
  const auto j = group_by_frequency(momentum_closed_form(m.fields));
  const auto sub = physical_subspace(m.space, options.null_rel_tol);
  const auto vac = vacuum(m.space);
  double zb = 0.0;
  double drift = 0.0;
  double constraint = 0.0;
  std::size_t checked = 0;
  auto visit = [&](const StateVector& psi) {
    constraint = std::max(constraint, is_physical(m.space, psi, options.constraint_tol).max_residual);
    if (std::abs(eta_inner(m.space, psi, psi)) <= options.norm_tol) return;
    const auto profile = momentum_profile(m.space, j, psi, options.norm_tol);
    const auto j0 = profile.at(0.0);
    for (int n = 0; n < 8; ++n) {
      const double t = 0.37 * n;
      zb = std::max(zb, profile.zb_at(t).cwiseAbs().maxCoeff());
      drift = std::max(drift, vector_gap(profile.at(t), j0));
    }
    ++checked;
  };
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const auto psi = sub.vector(i);
    visit(psi);
    if (sub.sector_of(i) == 2) visit(vac + cd(0.3) * psi);
  }
  const double tol = 1e-12;
  return make(5, "physical-state ZB vanishing", zb <= tol && drift <= tol && constraint <= options.constraint_tol,
              std::to_string(checked) + " normalizable physical states, max |<T3+T4>| " + sci(zb) + ", max drift " +
                  sci(drift) + ", constraint residual " + sci(constraint));
}

CriterionResult check_admixture(const SuiteOptions& options) {
  const Model m(1, 4, 2);
  const auto closed = momentum_closed_form(m.fields);
  const auto p = *m.modes.find({0, 0, 1});
  const double theta = 0.1;
  const auto psi = vacuum(m.space) + cd(theta) * basis_state(m.space, {mode(p, 1), mode(m.modes.negated(p), 3)});
  const double omega = m.modes[p].omega;
  const int count = 256;
  const double periods = 4.0;
  const auto times = zb_sample_times(omega, count, periods);
  const auto series = expectation_series(
      m.space, [&](double t) { return closed.at(t); }, psi, times, options.norm_tol);
  const auto spectrum = power_spectrum(series);
  std::size_t peak = 1;
  for (std::size_t n = 1; n < spectrum.size(); ++n) {
    if (spectrum[n] > spectrum[peak]) peak = n;
  }
  double runner_up = 0.0;
  for (std::size_t n = 1; n < spectrum.size(); ++n) {
    if (n != peak) runner_up = std::max(runner_up, spectrum[n]);
  }
  const double window = periods * std::numbers::pi / omega;
  const double peak_frequency = two_pi * static_cast<double>(peak) / window;
  const auto summary = summarize_oscillation(series, m.modes[p].k.normalized());
  const double norm2 = 1.0 / (1.0 + theta * theta);
  const double expected_amplitude = norm2 * theta * omega / std::sqrt(2.0);
  const bool ok = std::abs(peak_frequency - 2 * omega) <= 1e-9 * omega && runner_up <= 1e-12 * spectrum[peak] &&
                  summary.max_parallel <= 1e-10 && summary.max_im_residual <= 1e-10 &&
                  std::abs(summary.amplitude - expected_amplitude) <= 1e-12;
  return make(6, "admixture ZB", ok,
              "peak at " + sci(peak_frequency) + " = 2 omega (bin " + std::to_string(peak) + "), other bins/peak " +
                  sci(runner_up / spectrum[peak]) + ", |J_var.k| " + sci(summary.max_parallel) + ", amplitude " +
                  sci(summary.amplitude) + " vs " + sci(expected_amplitude));
}

CriterionResult check_gauge_invariance(const SuiteOptions& options) {
  const Model m(1, 4, 2);
  const auto j = group_by_frequency(momentum_closed_form(m.fields));
  const auto sub = physical_subspace(m.space, options.null_rel_tol);
  const auto vac = vacuum(m.space);
  std::vector<StateVector> one_photon;
  std::vector<StateVector> normalizable;
  for (std::size_t i = 0; i < sub.size() && sub.sector_of(i) <= 1; ++i) {
    const auto v = sub.vector(i);
    if (sub.sector_of(i) == 1) one_photon.push_back(v);
    if (std::abs(eta_inner(m.space, v, v)) > options.norm_tol) normalizable.push_back(v);
  }
  std::vector<StateVector> phis{vac};
  for (std::size_t i = 0; i < normalizable.size(); i += 7) phis.push_back(normalizable[i]);
  phis.push_back(vac + cd(0.4, 0.2) * normalizable.back());
  std::vector<StateVector> chis{vac};
  for (std::size_t i = 0; i < one_photon.size(); i += 19) chis.push_back(one_photon[i]);

  const double omega = mean_omega(m.modes);
  const double times[3] = {0.0, 0.3 / omega, 1.7 / omega};
  double worst = 0.0;
  std::size_t shifts = 0;
  for (std::size_t f = 0; f < phis.size(); ++f) {
    const auto before = momentum_profile(m.space, j, phis[f], options.norm_tol);
    for (std::size_t k = 0; k < m.modes.size(); ++k) {
      const auto& chi = chis[(f + k) % chis.size()];
      const auto shifted = gauge_shift(m.space, phis[f], chi, k, options.constraint_tol, options.norm_tol);
      const auto after = momentum_profile(m.space, j, shifted, options.norm_tol);
      for (double t : times) worst = std::max(worst, vector_gap(after.at(t), before.at(t)));
      ++shifts;
    }
  }
  return make(7, "gauge-class invariance", worst <= 1e-12,
              std::to_string(shifts) + " shifts over every k, max change " + sci(worst) + " at three times");
}

CriterionResult check_gravity(const SuiteOptions& options) {
  const Model m(1, 4, 2);
  const auto closed = momentum_closed_form(m.fields);
  const IntTriple q{1, 1, 0};
  const auto p = *m.modes.find({1, 0, 0});
  const auto r = *m.modes.find({0, 1, 0});
  const auto target = vacuum(m.space) + cd(0.5) * basis_state(m.space, {mode(p, 1), mode(r, 1)});
  const double omega = m.modes[p].omega;
  const auto times = zb_sample_times(omega, 64, 1.0);
  const double volume = m.modes.geometry().volume();

  // flat reduction
  const auto h0 = build_h00(m.modes.geometry(), PerturbationKind::cosine, 0.0, q);
  const auto rows0 = perturbed_constraint(m.fields, h0);
  const auto flat_rows = gauge_constraints(m.space);
  double flat_gap = 0.0;
  for (std::size_t k = 0; k < m.modes.size(); ++k) {
    const double scale = std::sqrt(m.modes[k].omega / volume);
    flat_gap = std::max(flat_gap, (rows0.rows[k].coefficients - scale * flat_rows[k].coefficients).cwiseAbs().maxCoeff());
  }
  const auto sub0 = perturbed_physical_states(m.space, rows0, options.null_rel_tol);
  const auto flat_sub = physical_subspace(m.space, options.null_rel_tol);
  const Eigen::MatrixXcd proj0 = sub0.one_photon_kernel() * sub0.one_photon_kernel().adjoint();
  const Eigen::MatrixXcd proj_flat = flat_sub.one_photon_kernel() * flat_sub.one_photon_kernel().adjoint();
  flat_gap = std::max(flat_gap, (proj0 - proj_flat).cwiseAbs().maxCoeff());
  flat_gap = std::max(flat_gap, (sub0.project(target).amplitudes - flat_sub.project(target).amplitudes).cwiseAbs().maxCoeff());
  const auto flat_response = zb_response(m.space, closed, sub0.project(target), times, omega, 0.0, options.norm_tol);
  flat_gap = std::max(flat_gap, flat_response.summary.zb_amplitude);

  // linear response and the position-space oracle
  const double eps_values[3] = {1e-3, 3e-3, 1e-2};
  double amplitude[3];
  double oracle_worst = 0.0;
  double mode_worst = 0.0;
  std::size_t oracle_states = 0;
  for (int e = 0; e < 3; ++e) {
    const auto h = build_h00(m.modes.geometry(), PerturbationKind::cosine, eps_values[e], q);
    const auto rows = perturbed_constraint(m.fields, h);
    const auto sub = perturbed_physical_states(m.space, rows, options.null_rel_tol);
    const auto psi = sub.project(target);
    amplitude[e] = zb_response(m.space, closed, psi, times, omega, eps_values[e], options.norm_tol).summary.zb_amplitude;
    auto check = [&](const StateVector& state) {
      oracle_worst = std::max(oracle_worst, position_space_residual(m.space, m.fields, h, state).band_limited);
      mode_worst = std::max(mode_worst, constraint_report(m.space, rows.rows, state).max_residual);
      ++oracle_states;
    };
    check(psi);
    for (std::size_t i = 0; i < sub.size(); ++i) {
      if (sub.sector_of(i) < 2 || i % 16 == 0) check(sub.vector(i));
    }
  }
  double num = 0.0;
  double den = 0.0;
  for (int e = 0; e < 3; ++e) {
    num += eps_values[e] * amplitude[e];
    den += eps_values[e] * eps_values[e];
  }
  const double slope = num / den;
  double fit = 0.0;
  for (int e = 0; e < 3; ++e) fit = std::max(fit, std::abs(amplitude[e] - slope * eps_values[e]) / (slope * eps_values[e]));

  // unit spatial weight leaves the momentum operator unchanged
  const auto h = build_h00(m.modes.geometry(), PerturbationKind::cosine, 1e-2, q);
  double weight_gap = 0.0;
  for (double t : {0.0, 0.3 / omega, 1.7 / omega}) {
    const auto weighted = momentum_oracle(m.fields, t, h.spatial_weight());
    const auto plain = momentum_oracle(m.fields, t);
    for (int c = 0; c < 3; ++c) weight_gap = std::max(weight_gap, max_coefficient_difference(weighted[c], plain[c]));
  }

  const double tol = options.constraint_tol;
  const bool ok = flat_gap <= 1e-10 && slope > 0.0 && fit <= 0.01 && oracle_worst <= tol && mode_worst <= tol &&
                  weight_gap == 0.0;
  return make(8, "gravity scenario", ok,
              "flat reduction " + sci(flat_gap) + ", slope " + sci(slope) + " fit residual " + sci(fit) + ", G(x)psi " +
                  sci(oracle_worst) + " over " + std::to_string(oracle_states) + " states, weighted vs plain " +
                  sci(weight_gap));
}

CriterionResult check_determinism(const SuiteOptions& options) {
  const std::string configs[2] = {
      "scenario.kind = manual_admixture\nscenario.p = (0, 0, 1)\nscenario.theta = 0.1\n",
      "scenario.kind = gravity_zb\nscenario.p = (1, 0, 0)\nscenario.q = (1, 1, 0)\nscenario.eps_h = 0.01\n"};
  bool identical = true;
  std::size_t bytes = 0;
  for (const auto& text : configs) {
    std::string first;
    std::string second;
    if (options.external_run) {
      first = options.external_run(text, 0);
      second = options.external_run(text, 1);
    } else {
      const auto config = parse_config(text);
      first = run_scenario(config).csv.value_or("");
      second = run_scenario(config).csv.value_or("");
    }
    identical = identical && !first.empty() && first == second;
    bytes += first.size();
  }
  return make(9, "determinism", identical,
              std::string(options.external_run ? "CLI" : "in-process") + " runs of two configs, " +
                  std::to_string(bytes) + " CSV bytes, " + (identical ? "byte-identical" : "differ"));
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options) {
  return {check_polarization(options),       check_commutators(options),   check_fields(options),
          check_oracle_equivalence(options), check_physical_vanishing(options), check_admixture(options),
          check_gauge_invariance(options),   check_gravity(options),        check_determinism(options)};
}

std::string format_result(const CriterionResult& result) {
  return "criterion " + std::to_string(result.id) + " [" + (result.passed ? "PASS" : "FAIL") + "] " + result.name +
         ": " + result.detail;
}

}  // namespace zbsim
