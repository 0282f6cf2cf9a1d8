#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "zbsim/lattice.hpp"

namespace zbsim {

using SparseMatrix = Eigen::SparseMatrix<cd, Eigen::RowMajor>;

/// Raised when an expectation is requested on a state whose eta-norm is
/// numerically zero. Such states are gauge-degenerate.
class ZeroNormState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated bosonic Fock space over the modes (k, s), s = 0..3, of a mode
/// set, with total photon number <= occupation_cap.
///
/// Basis states are multisets of mode ids (id = 4 * k_index + s), ordered by
/// photon number and then lexicographically. The indefinite metric is the
/// diagonal sign (-1)^(number of s = 0 quanta).
class FockSpace {
 public:
  FockSpace(const ModeSet& modes, int occupation_cap = 2);

  const ModeSet& modes() const { return modes_; }
  std::size_t mode_count() const { return mode_count_; }
  int occupation_cap() const { return cap_; }
  std::size_t dimension() const { return count_.size(); }

  static std::size_t mode_id(std::size_t k_index, int s) { return 4 * k_index + static_cast<std::size_t>(s); }
  static std::size_t k_of(std::size_t mode) { return mode / 4; }
  static int s_of(std::size_t mode) { return static_cast<int>(mode % 4); }
  /// [b, dagger(b)] for this mode: -eta_ss.
  static double commutator_sign(std::size_t mode) { return s_of(mode) == 0 ? -1.0 : 1.0; }

  /// Sorted mode ids occupied by basis state i (with multiplicity).
  std::span<const std::uint32_t> occupied(std::size_t i) const {
    return {modes_flat_.data() + i * static_cast<std::size_t>(cap_), count_[i]};
  }
  int photon_number(std::size_t i) const { return count_[i]; }
  double metric_sign(std::size_t i) const { return metric_[i]; }
  const Eigen::VectorXd& metric_diagonal() const { return metric_; }
  std::size_t occupation(std::size_t i, std::size_t mode) const;

  std::optional<std::size_t> index_of(std::span<const std::uint32_t> sorted_modes) const;

  /// b_mode |i> = coefficient |j>, or nothing when the mode is empty.
  std::optional<std::pair<std::size_t, double>> annihilate(std::size_t mode, std::size_t i) const;
  /// dagger(b_mode) |i> with the eta-adjoint sign; nothing past the cap.
  std::optional<std::pair<std::size_t, double>> create(std::size_t mode, std::size_t i) const;
  /// Plain Hermitian-adjoint creation (no metric sign).
  std::optional<std::pair<std::size_t, double>> create_plain(std::size_t mode, std::size_t i) const;

 private:
  std::uint64_t key(std::span<const std::uint32_t> sorted_modes) const;

  ModeSet modes_;
  std::size_t mode_count_;
  int cap_;
  std::vector<std::uint32_t> modes_flat_;
  std::vector<std::uint8_t> count_;
  Eigen::VectorXd metric_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Complex matrix on the Fock basis.
struct OperatorMatrix {
  SparseMatrix matrix;
};

/// Complex amplitudes on the Fock basis.
struct StateVector {
  Eigen::VectorXcd amplitudes;
};

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(cd scale, const OperatorMatrix& a);
StateVector operator*(const OperatorMatrix& a, const StateVector& psi);
StateVector operator+(const StateVector& a, const StateVector& b);
StateVector operator*(cd scale, const StateVector& psi);

OperatorMatrix identity(const FockSpace& space);
StateVector vacuum(const FockSpace& space);
/// Normalized occupation state, e.g. {mode_id(k, 1)} for |1_{k,1}>.
StateVector basis_state(const FockSpace& space, std::vector<std::uint32_t> modes);

/// Annihilator b(k, s).
OperatorMatrix ladder_b(const FockSpace& space, std::size_t k_index, int s);
/// eta-adjoint M X^H M.
OperatorMatrix dagger(const FockSpace& space, const OperatorMatrix& x);
OperatorMatrix commutator(const OperatorMatrix& x, const OperatorMatrix& y);

/// Helicity annihilator a(k, lambda) built from the b(k, s).
OperatorMatrix combine_a(const FockSpace& space, std::size_t k_index, int helicity);

/// Coefficients of a(k, lambda) on b(k, s), s = 0..3.
std::array<cd, 4> helicity_combination(int helicity);

cd eta_inner(const FockSpace& space, const StateVector& phi, const StateVector& psi);
cd expectation(const FockSpace& space, const OperatorMatrix& x, const StateVector& psi,
               double norm_tol = 1e-10);

/// Largest |entry| of a - b.
double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b);
/// Largest |entry| restricted to rows and columns with photon number < cap.
double max_abs_interior(const FockSpace& space, const OperatorMatrix& x);

}  // namespace zbsim
