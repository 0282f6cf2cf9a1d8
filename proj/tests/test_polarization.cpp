#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zbsim/polarization.hpp"

using namespace zbsim;

namespace {

// component formula; Eigen's complex cross conjugates its operands
Vector3c plain_cross(const Vector3c& a, const Vector3c& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

double invariant_violation(const ModeIndex& mode, const PolarizationBasis& b) {
  double worst = 0.0;
  const auto track = [&](double v) { worst = std::max(worst, v); };
  const int lambdas[] = {1, -1, 0};
  for (int l : lambdas) {
    for (int m : lambdas) {
      const cd dot = b.eps(l).dot(b.eps(m));  // conjugates the first argument
      track(std::abs(dot - cd(l == m ? 1.0 : 0.0)));
    }
  }
  track((b.eps_plus - b.eps_minus.conjugate()).cwiseAbs().maxCoeff());
  track((b.eps_zero - (mode.k / mode.omega).cast<cd>()).cwiseAbs().maxCoeff());
  const Vector3c kc = mode.k.cast<cd>();
  track(std::abs((kc.transpose() * b.eps_plus)(0)));
  track(std::abs((kc.transpose() * b.eps_minus)(0)));
  const cd i(0.0, 1.0);
  for (int l : lambdas) {
    const Vector3c lhs = i * plain_cross(kc, b.eps(l));
    track((lhs - double(l) * mode.omega * b.eps(l)).cwiseAbs().maxCoeff());
  }
  // transverse completeness
  Eigen::Matrix3cd sum = b.eps_plus * b.eps_plus.adjoint() + b.eps_minus * b.eps_minus.adjoint();
  const Eigen::Vector3d u = mode.k / mode.omega;
  const Eigen::Matrix3d expected = Eigen::Matrix3d::Identity() - u * u.transpose();
  track((sum - expected.cast<cd>()).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

TEST_CASE("k along +z matches the circular special case exactly") {
  const auto geom = make_geometry(2 * std::numbers::pi, 4);
  const auto b = circular_basis(make_mode(geom, {0, 0, 1}));
  const double r = std::sqrt(0.5);
  CHECK(b.eps_plus == Vector3c(r, cd(0, r), 0));
  CHECK(b.eps_minus == Vector3c(r, cd(0, -r), 0));
  CHECK(b.eps_zero == Vector3c(0, 0, 1));
  const Vector3c lhs = cd(0, 1) * plain_cross(Vector3c(0, 0, 1), b.eps_plus);
  CHECK((lhs - b.eps_plus).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("invariant suite over an n_max = 2 set") {
  const auto modes = make_mode_set(make_geometry(2 * std::numbers::pi, 6), 2);
  const auto table = polarization_table(modes);
  double worst = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) worst = std::max(worst, invariant_violation(modes[i], table[i]));
  CHECK(worst <= 1e-12);
}

TEST_CASE("generic diagonal wavevector") {
  const auto mode = make_mode(make_geometry(1.3, 4), {1, 1, 1});
  CHECK(invariant_violation(mode, circular_basis(mode)) <= 1e-12);
  const auto down = make_mode(make_geometry(1.3, 4), {0, 0, -2});
  CHECK(invariant_violation(down, circular_basis(down)) <= 1e-12);
}

TEST_CASE("four-polarizations and contractions") {
  const auto geom = make_geometry(2 * std::numbers::pi, 6);
  const auto z = make_mode(geom, {0, 0, 1});
  CHECK(four_polarization(z, 0) == Vector4c(1, 0, 0, 0));
  CHECK(four_polarization(z, 3) == Vector4c(0, 0, 0, 1));
  CHECK_THROWS(four_polarization(z, 4));
  CHECK_THROWS(four_polarization(z, -1));

  const auto modes = make_mode_set(geom, 2);
  double worst = 0.0;
  for (const auto& m : modes) {
    // k_mu e^mu with explicit (+,-,-,-) metric
    auto contract = [&](const Vector4c& e) {
      return m.omega * e(0) - m.k(0) * e(1) - m.k(1) * e(2) - m.k(2) * e(3);
    };
    worst = std::max(worst, std::abs(contract(four_polarization(m, 1))));
    worst = std::max(worst, std::abs(contract(four_polarization(m, 2))));
    worst = std::max(worst, std::abs(contract(four_polarization(m, 0)) + contract(four_polarization(m, 3))));
    worst = std::max(worst, std::abs(contract(four_polarization(m, 3)) -
                                     contract_with_wavevector(m, four_polarization(m, 3))));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("helicity labels and errors") {
  CHECK(helicity_of(1) == 1);
  CHECK(helicity_of(2) == -1);
  CHECK(helicity_of(3) == 0);
  CHECK_THROWS(helicity_of(0));
  CHECK_THROWS(circular_basis(Eigen::Vector3d::Zero()));
}
