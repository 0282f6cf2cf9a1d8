#include "zbsim/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zbsim {

Eigen::Vector3d BoxGeometry::point(std::size_t flat) const {
  const auto n = static_cast<std::size_t>(grid_points);
  const auto j3 = flat % n;
  const auto j2 = (flat / n) % n;
  const auto j1 = flat / (n * n);
  return spacing() * Eigen::Vector3d(static_cast<double>(j1), static_cast<double>(j2),
                                     static_cast<double>(j3));
}

BoxGeometry make_geometry(double side_length, int grid_points) {
  if (!(side_length > 0.0) || !std::isfinite(side_length)) {
    throw std::invalid_argument("box side length must be positive");
  }
  if (grid_points < 2) {
    throw std::invalid_argument("grid needs at least 2 points per axis");
  }
  return BoxGeometry{side_length, grid_points};
}

void require_quadrature(const BoxGeometry& geometry, int n_max) {
  if (geometry.grid_points < 2 * n_max + 2) {
    throw std::invalid_argument("grid of " + std::to_string(geometry.grid_points) +
                                " points per axis cannot integrate plane-wave products for n_max = " +
                                std::to_string(n_max) + " (need N >= 2 n_max + 2)");
  }
}

ModeIndex make_mode(const BoxGeometry& geometry, const IntTriple& n) {
  if (n[0] == 0 && n[1] == 0 && n[2] == 0) {
    throw std::invalid_argument("the zero mode is excluded");
  }
  ModeIndex mode;
  mode.n = n;
  const double scale = 2.0 * std::numbers::pi / geometry.side_length;
  mode.k = scale * Eigen::Vector3d(n[0], n[1], n[2]);
  mode.omega = mode.k.norm();
  return mode;
}

ModeSet::ModeSet(const BoxGeometry& geometry, std::vector<IntTriple> ns) : geometry_(geometry) {
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  modes_.reserve(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    modes_.push_back(make_mode(geometry, ns[i]));
    lookup_.emplace(ns[i], i);
    for (int c : ns[i]) max_component_ = std::max(max_component_, std::abs(c));
  }
  negated_.resize(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const IntTriple minus{-ns[i][0], -ns[i][1], -ns[i][2]};
    auto it = lookup_.find(minus);
    if (it == lookup_.end()) {
      throw std::invalid_argument("mode set is not closed under n -> -n");
    }
    negated_[i] = it->second;
  }
}

std::optional<std::size_t> ModeSet::find(const IntTriple& n) const {
  auto it = lookup_.find(n);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

ModeSet make_mode_set(const BoxGeometry& geometry, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  std::vector<IntTriple> ns;
  for (int a = -n_max; a <= n_max; ++a)
    for (int b = -n_max; b <= n_max; ++b)
      for (int c = -n_max; c <= n_max; ++c)
        if (a != 0 || b != 0 || c != 0) ns.push_back({a, b, c});
  return ModeSet(geometry, std::move(ns));
}

cd plane_wave(const ModeIndex& mode, const Eigen::Vector3d& x, double t) {
  const double phase = mode.omega * t - mode.k.dot(x);
  return {std::cos(phase), -std::sin(phase)};
}

}  // namespace zbsim
