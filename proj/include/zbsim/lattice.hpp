#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace zbsim {

using cd = std::complex<double>;
using IntTriple = std::array<int, 3>;

/// Periodic cubic box of side L sampled by N points per axis.
struct BoxGeometry {
  double side_length = 0.0;
  int grid_points = 0;

  double volume() const { return side_length * side_length * side_length; }
  double spacing() const { return side_length / grid_points; }
  double cell_volume() const { return spacing() * spacing() * spacing(); }
  std::size_t point_count() const {
    return static_cast<std::size_t>(grid_points) * grid_points * grid_points;
  }
  /// Grid point for a flat index, j3 fastest.
  Eigen::Vector3d point(std::size_t flat) const;
};

BoxGeometry make_geometry(double side_length, int grid_points);

/// Throws unless N >= 2 n_max + 2, the exact-quadrature condition for all
/// products of two plane waves with |n_i| <= n_max.
void require_quadrature(const BoxGeometry& geometry, int n_max);

/// A nonzero point of the reciprocal lattice, k = (2 pi / L) n.
struct ModeIndex {
  IntTriple n{};
  Eigen::Vector3d k = Eigen::Vector3d::Zero();
  double omega = 0.0;
};

ModeIndex make_mode(const BoxGeometry& geometry, const IntTriple& n);

/// Lexicographically ordered, negation-closed set of lattice modes.
class ModeSet {
 public:
  ModeSet(const BoxGeometry& geometry, std::vector<IntTriple> ns);

  const BoxGeometry& geometry() const { return geometry_; }
  std::size_t size() const { return modes_.size(); }
  const ModeIndex& operator[](std::size_t i) const { return modes_[i]; }
  std::optional<std::size_t> find(const IntTriple& n) const;
  std::size_t negated(std::size_t i) const { return negated_[i]; }
  /// Largest |n_i| over the set.
  int max_component() const { return max_component_; }

  auto begin() const { return modes_.begin(); }
  auto end() const { return modes_.end(); }

 private:
  BoxGeometry geometry_;
  std::vector<ModeIndex> modes_;
  std::vector<std::size_t> negated_;
  std::map<IntTriple, std::size_t> lookup_;
  int max_component_ = 0;
};

/// All n with 0 < max|n_i| <= n_max.
ModeSet make_mode_set(const BoxGeometry& geometry, int n_max);

/// exp(-i (omega t - k.x)).
cd plane_wave(const ModeIndex& mode, const Eigen::Vector3d& x, double t);

}  // namespace zbsim
