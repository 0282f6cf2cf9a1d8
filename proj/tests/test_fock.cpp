#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "zbsim/fock.hpp"

using namespace zbsim;

namespace {

ModeSet pair_modes() {
  return ModeSet(make_geometry(2 * std::numbers::pi, 4), {{0, 0, 1}, {0, 0, -1}});
}

// Largest deviation of x from value * identity over the cutoff interior.
double interior_identity_error(const FockSpace& space, const OperatorMatrix& x, cd value) {
  const auto n = static_cast<Eigen::Index>(space.dimension());
  SparseMatrix id(n, n);
  id.setIdentity();
  return max_abs_interior(space, {SparseMatrix(x.matrix - value * id)});
}

Eigen::VectorXcd random_vector(std::mt19937& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (auto& c : v) c = cd(g(rng), g(rng));
  return v;
}

}  // namespace

TEST_CASE("basis enumeration and metric") {
  const auto modes = pair_modes();
  FockSpace space(modes, 2);
  CHECK(space.mode_count() == 8);
  CHECK(space.dimension() == 1 + 8 + 36);
  FockSpace three(modes, 3);
  CHECK(three.dimension() == 1 + 8 + 36 + 120);
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    int scalars = 0;
    for (auto m : space.occupied(i)) scalars += (m % 4 == 0);
    CHECK(space.metric_sign(i) == (scalars % 2 ? -1.0 : 1.0));
    CHECK(space.index_of(space.occupied(i)) == i);
  }
  CHECK_THROWS(FockSpace(modes, 0));
}

TEST_CASE("ladder action and eta-adjoint signs") {
  FockSpace space(pair_modes(), 2);
  const auto vac = vacuum(space);
  const auto one = basis_state(space, {static_cast<std::uint32_t>(FockSpace::mode_id(0, 1))});
  const auto b1 = ladder_b(space, 0, 1);
  CHECK(eta_inner(space, vac, b1 * one) == cd(1.0));

  const auto b0 = ladder_b(space, 0, 0);
  const auto scalar = basis_state(space, {static_cast<std::uint32_t>(FockSpace::mode_id(0, 0))});
  const auto created = dagger(space, b0) * vac;
  CHECK((created.amplitudes + scalar.amplitudes).cwiseAbs().maxCoeff() == 0.0);

  CHECK(eta_inner(space, vac, vac) == cd(1.0));
  CHECK(eta_inner(space, scalar, scalar) == cd(-1.0));
  const auto other = basis_state(space, {static_cast<std::uint32_t>(FockSpace::mode_id(1, 1))});
  CHECK(eta_inner(space, one, other) == cd(0.0));
  CHECK(eta_inner(space, one, one) == cd(1.0));
  CHECK_THROWS(ladder_b(space, 2, 0));
  CHECK_THROWS(ladder_b(space, 0, 4));
}

TEST_CASE("b commutators on the cutoff interior") {
  FockSpace space(pair_modes(), 2);
  for (std::size_t k = 0; k < 2; ++k) {
    for (int s = 0; s < 4; ++s) {
      const auto b = ladder_b(space, k, s);
      for (std::size_t k2 = 0; k2 < 2; ++k2) {
        for (int s2 = 0; s2 < 4; ++s2) {
          const auto b2 = ladder_b(space, k2, s2);
          const double expected = (k == k2 && s == s2) ? (s == 0 ? -1.0 : 1.0) : 0.0;
          CHECK(interior_identity_error(space, commutator(b, dagger(space, b2)), expected) <= 1e-14);
          CHECK(max_abs_difference(commutator(b, b2), {SparseMatrix(b.matrix.rows(), b.matrix.cols())}) == 0.0);
        }
      }
    }
  }
  const auto b = ladder_b(space, 0, 1);
  CHECK(max_abs_difference(commutator(b, b), {SparseMatrix(b.matrix.rows(), b.matrix.cols())}) == 0.0);
}

TEST_CASE("helicity operator commutators") {
  FockSpace space(pair_modes(), 2);
  const int lambdas[] = {1, -1, 0};
  for (std::size_t k = 0; k < 2; ++k) {
    for (int l : lambdas) {
      const auto a = combine_a(space, k, l);
      for (std::size_t k2 = 0; k2 < 2; ++k2) {
        for (int l2 : lambdas) {
          const auto a2 = combine_a(space, k2, l2);
          const double expected = (k == k2 && l == l2 && l != 0) ? 1.0 : 0.0;
          // integer entries up to sqrt rounding
          CHECK(interior_identity_error(space, commutator(a, dagger(space, a2)), expected) <= 1e-14);
          CHECK(max_abs_interior(space, commutator(a, a2)) <= 1e-15);
        }
      }
    }
  }
  const auto a0 = combine_a(space, 0, 0);
  CHECK(max_abs_interior(space, commutator(a0, dagger(space, a0))) <= 1e-15);

  const auto b3 = ladder_b(space, 0, 3);
  const auto b0 = ladder_b(space, 0, 0);
  const cd i(0.0, 1.0);
  const auto literal = (i / std::sqrt(2.0)) * (b3 - b0);
  CHECK(max_abs_difference(a0, literal) <= 1e-15);
  CHECK(max_abs_difference(combine_a(space, 1, 1), i * ladder_b(space, 1, 1)) == 0.0);
  CHECK(max_abs_difference(combine_a(space, 1, -1), i * ladder_b(space, 1, 2)) == 0.0);
  CHECK_THROWS(combine_a(space, 0, 2));
}

TEST_CASE("zero-norm longitudinal-scalar state") {
  FockSpace space(pair_modes(), 2);
  const auto psi = dagger(space, combine_a(space, 0, 0)) * vacuum(space);
  CHECK(std::abs(eta_inner(space, psi, psi)) <= 1e-15);
  CHECK(psi.amplitudes.norm() > 0.5);
  CHECK_THROWS_AS(expectation(space, identity(space), psi), ZeroNormState);
}

TEST_CASE("expectations") {
  FockSpace space(pair_modes(), 2);
  const auto one = basis_state(space, {static_cast<std::uint32_t>(FockSpace::mode_id(0, 1))});
  const auto a = combine_a(space, 0, 1);
  const auto number = dagger(space, a) * a;
  CHECK(std::abs(expectation(space, number, one) - cd(1.0)) <= 1e-15);
  std::mt19937 rng(7);
  StateVector psi{random_vector(rng, static_cast<Eigen::Index>(space.dimension()))};
  CHECK(std::abs(expectation(space, identity(space), psi) - cd(1.0)) <= 1e-14);
}

TEST_CASE("dagger is an involutive anti-homomorphism and eta-adjoint") {
  FockSpace space(pair_modes(), 2);
  std::mt19937 rng(11);
  const auto n = static_cast<Eigen::Index>(space.dimension());
  std::normal_distribution<double> g;
  auto random_op = [&] {
    std::vector<Eigen::Triplet<cd>> t;
    for (int e = 0; e < 400; ++e) {
      t.emplace_back(static_cast<Eigen::Index>(rng() % n), static_cast<Eigen::Index>(rng() % n), cd(g(rng), g(rng)));
    }
    SparseMatrix m(n, n);
    m.setFromTriplets(t.begin(), t.end());
    return OperatorMatrix{m};
  };
  const auto x = random_op();
  const auto y = random_op();
  CHECK(max_abs_difference(dagger(space, dagger(space, x)), x) <= 1e-15);
  CHECK(max_abs_difference(dagger(space, x * y), dagger(space, y) * dagger(space, x)) <= 1e-12);
  StateVector phi{random_vector(rng, n)};
  StateVector psi{random_vector(rng, n)};
  const cd lhs = eta_inner(space, phi, x * psi);
  const cd rhs = eta_inner(space, dagger(space, x) * phi, psi);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  CHECK_THROWS(commutator(x, OperatorMatrix{SparseMatrix(2, 2)}));
  CHECK_THROWS(eta_inner(space, phi, StateVector{Eigen::VectorXcd::Zero(3)}));
}
