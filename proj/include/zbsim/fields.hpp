#pragma once

#include <array>

#include <Eigen/Core>

#include "zbsim/fock.hpp"
#include "zbsim/ladder_forms.hpp"
#include "zbsim/polarization.hpp"

namespace zbsim {

/// Operator-valued field with one column per component c:
///   F_c(x, t) = sum_a ann(a, c) b_a phi_a(x, t) + cre(a, c) dagger(b_a) conj(phi_a(x, t)),
/// a = 4 k + s running over the Fock modes and phi_a the plane wave of k.
/// Derivatives act term by term on the plane waves.
class SpectralField {
 public:
  SpectralField(const ModeSet& modes, Eigen::MatrixXcd ann, Eigen::MatrixXcd cre);
  static SpectralField zero(const ModeSet& modes, int components);

  int components() const { return static_cast<int>(ann_.cols()); }
  std::size_t mode_count() const { return static_cast<std::size_t>(ann_.rows()); }
  const Eigen::MatrixXcd& ann() const { return ann_; }
  const Eigen::MatrixXcd& cre() const { return cre_; }

  SpectralField slice(int first, int count) const;
  SpectralField time_derivative() const;
  /// One component in, three out.
  SpectralField gradient() const;
  /// Three components in, one out.
  SpectralField divergence() const;
  SpectralField curl() const;

  SpectralField operator+(const SpectralField& other) const;
  SpectralField operator-(const SpectralField& other) const;
  SpectralField scaled(cd factor) const;

  LinearForm at(int component, const Eigen::Vector3d& x, double t) const;
  /// Component c at every grid point, rows in grid order.
  GridLinearForms on_grid(int component, double t) const;
  double max_coefficient() const;

 private:
  SpectralField(BoxGeometry geometry, Eigen::MatrixXd k, Eigen::VectorXd omega, Eigen::MatrixXcd ann,
                Eigen::MatrixXcd cre);
  void require_compatible(const SpectralField& other) const;

  BoxGeometry geometry_;
  Eigen::MatrixXd k_;
  Eigen::VectorXd omega_;
  Eigen::MatrixXcd ann_;
  Eigen::MatrixXcd cre_;
};

struct FieldOptions {
  /// B carries the factor helicity_phase * i * lambda; -1 is the curl-consistent sign.
  double helicity_phase = -1.0;
};

/// Potential A^mu and intensities E, B built from the mode expansions.
class FieldModel {
 public:
  explicit FieldModel(const ModeSet& modes, FieldOptions options = {});

  const ModeSet& modes() const { return modes_; }
  const std::vector<PolarizationBasis>& bases() const { return bases_; }
  /// Four components A^0..A^3.
  const SpectralField& potential() const { return potential_; }
  const SpectralField& electric() const { return electric_; }
  const SpectralField& magnetic() const { return magnetic_; }

  /// -grad A^0 - d_t A.
  SpectralField electric_from_potential() const;
  /// curl A.
  SpectralField magnetic_from_potential() const;

 private:
  ModeSet modes_;
  std::vector<PolarizationBasis> bases_;
  SpectralField potential_;
  SpectralField electric_;
  SpectralField magnetic_;
};

std::array<OperatorMatrix, 4> potential_A(const FockSpace& space, const FieldModel& fields, const Eigen::Vector3d& x,
                                          double t);
std::array<OperatorMatrix, 3> field_E(const FockSpace& space, const FieldModel& fields, const Eigen::Vector3d& x,
                                      double t);
std::array<OperatorMatrix, 3> field_B(const FockSpace& space, const FieldModel& fields, const Eigen::Vector3d& x,
                                      double t);

/// Max over grid points and components of the largest matrix entry of
/// div B and d_t B + curl E at time t.
double maxwell_residual(const FockSpace& space, const FieldModel& fields, double t);

}  // namespace zbsim
