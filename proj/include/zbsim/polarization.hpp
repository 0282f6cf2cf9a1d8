#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "zbsim/lattice.hpp"

namespace zbsim {

using Vector3c = Eigen::Vector3cd;
using Vector4c = Eigen::Vector4cd;

/// Circular/longitudinal triad for one wavevector plus the four
/// 4-polarizations built from it.
///
/// Convention: with (theta, phi) the spherical angles of k, the real dyad
/// e1 = theta_hat, e2 = phi_hat satisfies e1 x e2 = k_hat, and
/// eps(+-1) = (e1 +- i e2) / sqrt(2). For k along +z this is exactly
/// (1, +-i, 0) / sqrt(2); along -z phi is taken as 0.
struct PolarizationBasis {
  Vector3c eps_plus;
  Vector3c eps_minus;
  Vector3c eps_zero;

  /// eps(k, lambda) for lambda in {+1, -1, 0}.
  const Vector3c& eps(int helicity) const;
  /// e^mu(k, s): s = 0 timelike, 1 -> +1, 2 -> -1, 3 -> longitudinal.
  Vector4c four(int s) const;
};

PolarizationBasis circular_basis(const Eigen::Vector3d& k);
PolarizationBasis circular_basis(const ModeIndex& mode);

Vector4c four_polarization(const ModeIndex& mode, int s);

/// k_mu e^mu with signature (+, -, -, -) and k^mu = (omega, k).
cd contract_with_wavevector(const ModeIndex& mode, const Vector4c& e_upper);

/// Helicity carried by Fock polarization index s (s = 0 has none).
int helicity_of(int s);

/// One basis per mode, aligned with the mode set.
std::vector<PolarizationBasis> polarization_table(const ModeSet& modes);

}  // namespace zbsim
