#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "zbsim/constraint.hpp"
#include "zbsim/fields.hpp"
#include "zbsim/momentum.hpp"

namespace zbsim {

enum class PerturbationKind { cosine, uniform_gradient };

/// Raised when the stacked constraints leave no admissible state.
class EmptyKernel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// h_00 on the grid; all other components vanish.
struct MetricPerturbation {
  PerturbationKind kind = PerturbationKind::cosine;
  double eps_h = 0.0;
  IntTriple q{};
  Eigen::VectorXd h00;
  /// Rows are grid points, columns d/dx_i h_00.
  Eigen::MatrixXd gradient;

  bool periodic() const { return kind == PerturbationKind::cosine; }
  /// sqrt(g11 g22 g33), identically one for a pure h_00.
  Eigen::VectorXd spatial_weight() const { return Eigen::VectorXd::Ones(h00.size()); }
};

/// cosine: eps cos(q.x); uniform_gradient: eps x_3 / L (not periodic).
MetricPerturbation build_h00(const BoxGeometry& geometry, PerturbationKind kind, double eps_h,
                             const IntTriple& q = {0, 0, 1});

/// Mode-projected constraint rows C(K) = N^-3 sum_x G(x) exp(-i K.x) with
///   G(x) = d^mu A_mu^(+)(x) + A_mu^(+)(x) d^mu h_00(x) at t = 0,
/// for every K of the mode set.
struct PerturbedConstraints {
  std::vector<ConstraintRow> rows;
  std::size_t sample_points = 0;
};

PerturbedConstraints perturbed_constraint(const FieldModel& fields, const MetricPerturbation& h);

/// G(x) at every grid point as annihilation-only forms (rows = points).
Eigen::MatrixXcd constraint_field_on_grid(const FieldModel& fields, const MetricPerturbation& h);

PhysicalSubspace perturbed_physical_states(const FockSpace& space, const PerturbedConstraints& constraints,
                                           double rel_tol = 1e-9);

/// max_x ||G(x) psi|| after band-limiting to the mode set, and the raw
/// out-of-band remainder (information only).
struct PositionSpaceResidual {
  double band_limited = 0.0;
  double out_of_band = 0.0;
};
PositionSpaceResidual position_space_residual(const FockSpace& space, const FieldModel& fields,
                                              const MetricPerturbation& h, const StateVector& psi);

struct ZbSummary {
  double omega = 0.0;
  double zb_frequency = 0.0;
  double zb_amplitude = 0.0;
  /// Largest |oscillation . k_hat| / |oscillation| over the contributing wavevectors.
  double direction_cosine = 0.0;
  double eps_h = 0.0;
};

struct ZbResponse {
  TimeSeries series;
  MomentumProfile profile;
  ZbSummary summary;
};

ZbResponse zb_response(const FockSpace& space, const MomentumDecomposition& j, const StateVector& psi,
                       const std::vector<double>& times, double omega, double eps_h, double norm_tol = 1e-10);

}  // namespace zbsim
