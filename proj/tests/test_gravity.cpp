#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zbsim/gravity.hpp"

using namespace zbsim;

namespace {

std::uint32_t id(std::size_t k, int s) { return static_cast<std::uint32_t>(FockSpace::mode_id(k, s)); }

struct Setup {
  ModeSet modes = make_mode_set(make_geometry(2 * std::numbers::pi, 4), 1);
  FockSpace space{modes, 2};
  FieldModel fields{modes};
};

Setup& setup() {
  static Setup s;
  return s;
}

// Mode-space form of the perturbed constraint, from a single contraction of
// the plane-wave expansion with grad h = (i eps q / 2)(e^{iq.x} - e^{-iq.x}).
Eigen::VectorXcd expected_row(const ModeSet& modes, const std::vector<PolarizationBasis>& bases, std::size_t target,
                              double eps, const IntTriple& qn) {
  const double volume = modes.geometry().volume();
  const Eigen::Vector3d q = (2 * std::numbers::pi / modes.geometry().side_length) * Eigen::Vector3d(qn[0], qn[1], qn[2]);
  Eigen::VectorXcd row = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(4 * modes.size()));
  const auto& k = modes[target];
  const double flat = std::sqrt(k.omega / volume) / std::sqrt(2.0);
  // sqrt(omega / V) a(k, 0) with a(k, 0) = i (b3 - b0) / sqrt(2)
  row(FockSpace::mode_id(target, 3)) += cd(0, flat);
  row(FockSpace::mode_id(target, 0)) += cd(0, -flat);
  for (int sign : {+1, -1}) {
    const IntTriple source{k.n[0] - sign * qn[0], k.n[1] - sign * qn[1], k.n[2] - sign * qn[2]};
    const auto s_index = modes.find(source);
    if (!s_index) continue;
    const auto& mode = modes[*s_index];
    const double norm = 1.0 / std::sqrt(2.0 * mode.omega * volume);
    for (int s = 1; s < 4; ++s) {
      const Eigen::Vector4cd e = bases[*s_index].four(s);
      const cd qe = q(0) * e(1) + q(1) * e(2) + q(2) * e(3);
      row(FockSpace::mode_id(*s_index, s)) += cd(0, sign * eps / 2) * norm * qe;
    }
  }
  return row;
}

}  // namespace

TEST_CASE("metric perturbation models") {
  const auto geom = make_geometry(2 * std::numbers::pi, 4);
  const auto zero = build_h00(geom, PerturbationKind::cosine, 0.0, {0, 0, 1});
  CHECK(zero.h00.cwiseAbs().maxCoeff() == 0.0);
  const auto h = build_h00(geom, PerturbationKind::cosine, 1e-2, {0, 0, 1});
  CHECK(h.h00(0) == doctest::Approx(0.01));
  CHECK(h.spatial_weight().isOnes());
  CHECK(h.h00.cwiseAbs().maxCoeff() <= 0.1);
  CHECK_THROWS(build_h00(geom, PerturbationKind::cosine, 0.2, {0, 0, 1}));
  CHECK_THROWS(build_h00(geom, PerturbationKind::cosine, 0.01, {0, 0, 0}));
  const auto slope = build_h00(geom, PerturbationKind::uniform_gradient, 0.05);
  CHECK_FALSE(slope.periodic());
  CHECK_THROWS(perturbed_constraint(setup().fields, slope));
}

TEST_CASE("constraint rows match the single-contraction formula") {
  auto& s = setup();
  for (double eps : {0.0, 1e-2}) {
    const IntTriple q{0, 0, 1};
    const auto h = build_h00(s.modes.geometry(), PerturbationKind::cosine, eps, q);
    const auto rows = perturbed_constraint(s.fields, h);
    CHECK(rows.rows.size() == s.modes.size());
    CHECK(rows.sample_points == 64);
    double worst = 0.0;
    for (const auto& row : rows.rows) {
      const auto expected = expected_row(s.modes, s.fields.bases(), row.k_index, eps, q);
      worst = std::max(worst, (row.coefficients - expected).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("flat reduction") {
  auto& s = setup();
  const auto h = build_h00(s.modes.geometry(), PerturbationKind::cosine, 0.0, {1, 1, 0});
  const auto rows = perturbed_constraint(s.fields, h);
  const auto flat = gauge_constraints(s.space);
  const double volume = s.modes.geometry().volume();
  double worst = 0.0;
  for (std::size_t q = 0; q < s.modes.size(); ++q) {
    const double scale = std::sqrt(s.modes[q].omega / volume);
    worst = std::max(worst, (rows.rows[q].coefficients - scale * flat[q].coefficients).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-12);

  const auto perturbed = perturbed_physical_states(s.space, rows);
  const auto reference = physical_subspace(s.space);
  CHECK(perturbed.size() == reference.size());
  const Eigen::MatrixXcd p1 = perturbed.one_photon_kernel() * perturbed.one_photon_kernel().adjoint();
  const Eigen::MatrixXcd p2 = reference.one_photon_kernel() * reference.one_photon_kernel().adjoint();
  CHECK((p1 - p2).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("perturbed constraints on simple states") {
  auto& s = setup();
  const IntTriple q{0, 0, 1};
  const auto p = *s.modes.find({1, 0, 0});
  const auto vac = vacuum(s.space);
  const auto one = basis_state(s.space, {id(p, 1)});
  std::vector<double> sizes;
  for (double eps : {1e-3, 1e-2}) {
    const auto rows = perturbed_constraint(s.fields, build_h00(s.modes.geometry(), PerturbationKind::cosine, eps, q));
    CHECK(constraint_report(s.space, rows.rows, vac).max_residual == 0.0);
    const auto report = constraint_report(s.space, rows.rows, one);
    double largest = 0.0;
    for (std::size_t k = 0; k < s.modes.size(); ++k) {
      const auto& n = s.modes[k].n;
      const bool shifted = (n == IntTriple{1, 0, -1}) || (n == IntTriple{1, 0, 1});
      if (!shifted) CHECK(report.residuals[k] <= 1e-15);
      else CHECK(report.residuals[k] > 0.0);
      largest = std::max(largest, report.residuals[k]);
    }
    sizes.push_back(largest);
  }
  CHECK(sizes[1] / sizes[0] == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("perturbed companion of a transverse photon") {
  auto& s = setup();
  const IntTriple q{0, 0, 1};
  const auto p = *s.modes.find({1, 0, 0});
  const double eps = 1e-2;
  const auto h = build_h00(s.modes.geometry(), PerturbationKind::cosine, eps, q);
  const auto rows = perturbed_constraint(s.fields, h);
  const auto sub = perturbed_physical_states(s.space, rows);
  const auto companion = sub.project(basis_state(s.space, {id(p, 1)}));
  CHECK(constraint_report(s.space, rows.rows, companion).max_residual <= 1e-10);
  const auto oracle = position_space_residual(s.space, s.fields, h, companion);
  CHECK(oracle.band_limited <= 1e-10);

  double admixture = 0.0;
  for (const IntTriple& n : {IntTriple{1, 0, -1}, IntTriple{1, 0, 1}}) {
    const auto k = *s.modes.find(n);
    for (int sp : {0, 3}) {
      admixture = std::max(admixture, std::abs(companion.amplitudes(static_cast<Eigen::Index>(*s.space.index_of(
                                          std::vector<std::uint32_t>{id(k, sp)})))));
    }
  }
  CHECK(admixture > 0.1 * eps);
  CHECK(admixture < 10 * eps);
}
