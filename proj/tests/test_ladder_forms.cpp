#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "zbsim/ladder_forms.hpp"

using namespace zbsim;

namespace {

ModeSet pair_modes() {
  return ModeSet(make_geometry(2 * std::numbers::pi, 4), {{0, 0, 1}, {0, 0, -1}});
}

LinearForm random_form(std::mt19937& rng, std::size_t m, double density = 0.7) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  auto f = LinearForm::zero(m);
  for (std::size_t a = 0; a < m; ++a) {
    if (u(rng) < density) f.ann(static_cast<Eigen::Index>(a)) = cd(g(rng), g(rng));
    if (u(rng) < density) f.cre(static_cast<Eigen::Index>(a)) = cd(g(rng), g(rng));
  }
  return f;
}

// Largest |entry| of x - y over columns with at most cap - 2 photons, where
// truncation cannot spoil a product of two ladder operators.
double low_column_difference(const FockSpace& space, const OperatorMatrix& x, const OperatorMatrix& y) {
  const SparseMatrix diff = x.matrix - y.matrix;
  double worst = 0.0;
  for (Eigen::Index r = 0; r < diff.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(diff, r); it; ++it)
      if (space.photon_number(static_cast<std::size_t>(it.col())) + 2 <= space.occupation_cap())
        worst = std::max(worst, std::abs(it.value()));
  return worst;
}

}  // namespace

TEST_CASE("linear form materializes to its ladder expansion") {
  FockSpace space(pair_modes(), 2);
  std::mt19937 rng(3);
  const auto f = random_form(rng, space.mode_count());
  OperatorMatrix expected{SparseMatrix(space.dimension(), space.dimension())};
  for (std::size_t a = 0; a < space.mode_count(); ++a) {
    const auto b = ladder_b(space, FockSpace::k_of(a), FockSpace::s_of(a));
    expected = expected + f.ann(static_cast<Eigen::Index>(a)) * b +
               f.cre(static_cast<Eigen::Index>(a)) * dagger(space, b);
  }
  const auto m = materialize(f, space);
  CHECK(max_abs_difference(m, expected) <= 1e-14);
  CHECK(max_abs_difference(materialize(adjoint(f), space), dagger(space, m)) <= 1e-14);

  double largest = 0.0;
  for (Eigen::Index r = 0; r < m.matrix.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(m.matrix, r); it; ++it) largest = std::max(largest, std::abs(it.value()));
  CHECK(max_entry(f, space) == doctest::Approx(largest).epsilon(1e-14));

  StateVector psi{Eigen::VectorXcd::Random(static_cast<Eigen::Index>(space.dimension()))};
  CHECK((apply(f, space, psi).amplitudes - (m * psi).amplitudes).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("ordered product equals the operator product below the cutoff") {
  FockSpace space(pair_modes(), 3);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    const auto f = random_form(rng, space.mode_count());
    const auto g = random_form(rng, space.mode_count());
    const auto q = ordered_product(f, g);
    const auto product = materialize(f, space) * materialize(g, space);
    CHECK(low_column_difference(space, materialize(q, space), product) <= 1e-12);
    CHECK(max_coefficient_difference(q, q) == 0.0);

    const auto qa = adjoint(q);
    CHECK(low_column_difference(space, materialize(qa, space), dagger(space, materialize(q, space))) <= 1e-12);

    StateVector psi{Eigen::VectorXcd::Random(static_cast<Eigen::Index>(space.dimension()))};
    const auto m = materialize(q, space);
    CHECK((apply(q, space, psi).amplitudes - (m * psi).amplitudes).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("vacuum constant carries the commutator sign") {
  FockSpace space(pair_modes(), 2);
  const auto m = space.mode_count();
  auto f = LinearForm::zero(m);
  auto g = LinearForm::zero(m);
  f.ann(0) = 1.0;  // b(k,0)
  g.cre(0) = 1.0;  // dagger(b(k,0))
  CHECK(ordered_product(f, g).constant == cd(-1.0));
  f.ann(0) = 0.0;
  g.cre(0) = 0.0;
  f.ann(1) = 1.0;
  g.cre(1) = 1.0;
  CHECK(ordered_product(f, g).constant == cd(1.0));
}

TEST_CASE("grid quadrature product matches pointwise products") {
  FockSpace space(pair_modes(), 2);
  std::mt19937 rng(9);
  const std::size_t points = 5;
  const auto m = static_cast<Eigen::Index>(space.mode_count());
  GridLinearForms f{Eigen::MatrixXcd::Random(points, m), Eigen::MatrixXcd::Random(points, m)};
  GridLinearForms g{Eigen::MatrixXcd::Random(points, m), Eigen::MatrixXcd::Random(points, m)};
  Eigen::VectorXd w = Eigen::VectorXd::Random(points);

  QuadraticBuilder builder(space.mode_count());
  for (std::size_t p = 0; p < points; ++p) builder.add_product(w(static_cast<Eigen::Index>(p)), f.at(p), g.at(p));
  const auto expected = builder.build();
  const auto quad = quadrature_product(f, g, w, 0.0);
  CHECK(max_coefficient_difference(quad, expected) <= 1e-13);

  QuadraticBuilder unweighted(space.mode_count());
  for (std::size_t p = 0; p < points; ++p) unweighted.add_product(1.0, f.at(p), g.at(p));
  CHECK(max_coefficient_difference(quadrature_product(f, g, Eigen::VectorXd(), 0.0), unweighted.build()) <= 1e-13);
  CHECK_THROWS(quadrature_product(f, g, Eigen::VectorXd::Ones(3), 0.0));
}

TEST_CASE("mismatched sizes are rejected") {
  FockSpace space(pair_modes(), 2);
  CHECK_THROWS(LinearForm::zero(3) + LinearForm::zero(4));
  CHECK_THROWS(materialize(LinearForm::zero(3), space));
  CHECK_THROWS(QuadraticForm::zero(3) - QuadraticForm::zero(4));
}
