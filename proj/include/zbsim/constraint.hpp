#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "zbsim/fock.hpp"
#include "zbsim/ladder_forms.hpp"

namespace zbsim {

/// Annihilation-only constraint sum_a coefficients[a] b_a, labelled by a wavevector index.
struct ConstraintRow {
  std::size_t k_index = 0;
  Eigen::VectorXcd coefficients;
};

/// Rows a(k, 0) for every k of the space.
std::vector<ConstraintRow> gauge_constraints(const FockSpace& space);

struct ConstraintReport {
  std::vector<double> residuals;
  double max_residual = 0.0;
  bool physical = true;
};

/// Euclidean (auxiliary-norm) residuals ||C psi|| per row.
ConstraintReport constraint_report(const FockSpace& space, const std::vector<ConstraintRow>& rows,
                                   const StateVector& psi, double tol = 1e-10);
ConstraintReport is_physical(const FockSpace& space, const StateVector& psi, double tol = 1e-10);

/// Joint kernel of annihilation-only constraints.
///
/// A linear annihilator combination kills a multi-photon state exactly when
/// the state lies in the symmetric power of the one-photon kernel W, so the
/// sector-n basis is the normalized symmetrized products of columns of W.
/// Vectors are orthonormal in the auxiliary norm; their creation operators
/// are the plain (Hermitian) adjoints.
class PhysicalSubspace {
 public:
  PhysicalSubspace(const FockSpace& space, Eigen::MatrixXcd one_photon_kernel);

  const Eigen::MatrixXcd& one_photon_kernel() const { return kernel_; }
  std::size_t size() const { return offsets_.back(); }
  std::size_t sector_size(int photons) const;
  int sector_of(std::size_t i) const;
  StateVector vector(std::size_t i) const;
  /// Orthogonal (auxiliary-norm) projection onto the subspace.
  StateVector project(const StateVector& psi) const;
  /// Kernel columns used by vector(i), nondecreasing.
  std::vector<std::uint32_t> columns(std::size_t i) const;

 private:
  const FockSpace* space_;
  Eigen::MatrixXcd kernel_;
  Eigen::MatrixXcd projector_;
  std::vector<std::size_t> offsets_;
};

/// Rank-revealing kernel of the stacked rows, solved per connected block of modes.
/// Singular values at or below rel_tol * largest count as kernel.
PhysicalSubspace kernel_of(const FockSpace& space, const std::vector<ConstraintRow>& rows, double rel_tol = 1e-9);
PhysicalSubspace physical_subspace(const FockSpace& space, double rel_tol = 1e-9);

/// phi + dagger(a(k, 0)) chi for physical phi, chi.
StateVector gauge_shift(const FockSpace& space, const StateVector& phi, const StateVector& chi, std::size_t k_index,
                        double tol = 1e-10, double norm_tol = 1e-10);

/// Result of applying sum_j c_j dagger_plain(column_j) to a state: plain-creation
/// products used to build kernel vectors.
StateVector create_product(const FockSpace& space, const std::vector<Eigen::VectorXcd>& factors);

}  // namespace zbsim
