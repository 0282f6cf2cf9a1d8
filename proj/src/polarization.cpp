#include "zbsim/polarization.hpp"

#include <cmath>
#include <stdexcept>

namespace zbsim {

const Vector3c& PolarizationBasis::eps(int helicity) const {
  switch (helicity) {
    case 1:
      return eps_plus;
    case -1:
      return eps_minus;
    case 0:
      return eps_zero;
    default:
      throw std::invalid_argument("helicity must be +1, -1 or 0");
  }
}

Vector4c PolarizationBasis::four(int s) const {
  Vector4c e = Vector4c::Zero();
  switch (s) {
    case 0:
      e(0) = 1.0;
      break;
    case 1:
      e.tail<3>() = eps_plus;
      break;
    case 2:
      e.tail<3>() = eps_minus;
      break;
    case 3:
      e.tail<3>() = eps_zero;
      break;
    default:
      throw std::invalid_argument("polarization index s must be 0..3");
  }
  return e;
}

PolarizationBasis circular_basis(const Eigen::Vector3d& k) {
  const double norm = k.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("polarization basis undefined for k = 0");

  const double rho = std::hypot(k.x(), k.y());
  const double cos_theta = k.z() / norm;
  const double sin_theta = rho / norm;
  double cos_phi = 1.0;
  double sin_phi = 0.0;
  if (rho > 0.0) {
    cos_phi = k.x() / rho;
    sin_phi = k.y() / rho;
  }
  const Eigen::Vector3d e1(cos_theta * cos_phi, cos_theta * sin_phi, -sin_theta);
  const Eigen::Vector3d e2(-sin_phi, cos_phi, 0.0);
  const double r = std::sqrt(0.5);
  const cd i(0.0, 1.0);

  PolarizationBasis basis;
  basis.eps_plus = r * (e1.cast<cd>() + i * e2.cast<cd>());
  basis.eps_minus = r * (e1.cast<cd>() - i * e2.cast<cd>());
  basis.eps_zero = (k / norm).cast<cd>();
  return basis;
}

PolarizationBasis circular_basis(const ModeIndex& mode) { return circular_basis(mode.k); }

Vector4c four_polarization(const ModeIndex& mode, int s) { return circular_basis(mode).four(s); }

cd contract_with_wavevector(const ModeIndex& mode, const Vector4c& e_upper) {
  return mode.omega * e_upper(0) - (mode.k.cast<cd>().transpose() * e_upper.tail<3>())(0);
}

int helicity_of(int s) {
  switch (s) {
    case 1:
      return 1;
    case 2:
      return -1;
    case 3:
      return 0;
    default:
      throw std::invalid_argument("s = 0 carries no helicity");
  }
}

std::vector<PolarizationBasis> polarization_table(const ModeSet& modes) {
  std::vector<PolarizationBasis> table;
  table.reserve(modes.size());
  for (const auto& mode : modes) table.push_back(circular_basis(mode));
  return table;
}

}  // namespace zbsim
