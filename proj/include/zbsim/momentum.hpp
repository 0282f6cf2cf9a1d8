#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "zbsim/fields.hpp"
#include "zbsim/ladder_forms.hpp"

namespace zbsim {

/// Three components of a vector-valued quadratic operator.
using VectorOperator = std::array<QuadraticForm, 3>;

VectorOperator operator+(const VectorOperator& a, const VectorOperator& b);
VectorOperator operator-(const VectorOperator& a, const VectorOperator& b);
VectorOperator adjoint(const VectorOperator& x);

/// sum over grid points of weight(x) cell_volume E(x,t) x B(x,t), E factors to
/// the left. An empty weight means weight = 1.
VectorOperator momentum_oracle(const FieldModel& fields, double t, const Eigen::VectorXd& weight = {},
                               double prune = 1e-13);

/// Oscillating piece of one wavevector: forward e^{-2 i omega t} + eta-adjoint.
struct ZbTerm {
  std::size_t k_index = 0;
  double omega = 0.0;
  VectorOperator forward;
};

struct MomentumDecomposition {
  VectorOperator classic;
  VectorOperator cross;
  std::vector<ZbTerm> zb_a;
  std::vector<ZbTerm> zb_b;

  VectorOperator term_zb_a(double t) const;
  VectorOperator term_zb_b(double t) const;
  VectorOperator at(double t) const;
};

/// Transverse-photon momentum, the longitudinal/transverse cross term and
/// the two pair-creation/annihilation groups.
MomentumDecomposition momentum_closed_form(const FieldModel& fields);

/// Same operator with the oscillating terms of equal frequency merged; the
/// k_index of a merged term is that of its first member.
MomentumDecomposition group_by_frequency(const MomentumDecomposition& j, double omega_tol = 1e-12);

/// Largest matrix entry of a - b over the Fock space, with the constant
/// (multiple of identity) parts reported separately.
struct OperatorComparison {
  double max_entry = 0.0;
  Eigen::Vector3cd constant_offset = Eigen::Vector3cd::Zero();
};
OperatorComparison compare_operators(const FockSpace& space, const VectorOperator& a, const VectorOperator& b);

Eigen::Vector3cd expectation(const FockSpace& space, const VectorOperator& j, const StateVector& psi,
                             double norm_tol = 1e-10);

/// <J(t)> of a fixed state as static part plus one oscillating pair per wavevector.
struct MomentumProfile {
  struct Oscillation {
    std::size_t k_index = 0;
    double omega = 0.0;
    Eigen::Vector3cd forward = Eigen::Vector3cd::Zero();
    Eigen::Vector3cd backward = Eigen::Vector3cd::Zero();
  };
  Eigen::Vector3cd classic = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd cross = Eigen::Vector3cd::Zero();
  std::vector<Oscillation> oscillations;

  Eigen::Vector3cd at(double t) const;
  Eigen::Vector3cd zb_at(double t) const;
};

MomentumProfile momentum_profile(const FockSpace& space, const MomentumDecomposition& j, const StateVector& psi,
                                 double norm_tol = 1e-10);

struct TimeSeries {
  std::vector<double> t;
  std::vector<Eigen::Vector3d> j;
  std::vector<double> im_residual;
};

/// n samples over periods ZB periods pi / omega, endpoint excluded.
std::vector<double> zb_sample_times(double omega, int count, double periods);

TimeSeries expectation_series(const MomentumProfile& profile, const std::vector<double>& times);
TimeSeries expectation_series(const FockSpace& space, const std::function<VectorOperator(double)>& source,
                              const StateVector& psi, const std::vector<double>& times, double norm_tol = 1e-10);

/// Features of the time-varying part of a series.
struct OscillationSummary {
  /// Zero when the amplitude is at or below the noise floor.
  double angular_frequency = 0.0;
  double amplitude = 0.0;
  /// max |J_var . axis| / max |J_var|, 0 when there is no oscillation.
  double direction_cosine = 0.0;
  double max_parallel = 0.0;
  double max_im_residual = 0.0;
};

/// |DFT|^2 summed over components, bins 0..n/2, after removing the mean.
std::vector<double> power_spectrum(const TimeSeries& series);
OscillationSummary summarize_oscillation(const TimeSeries& series, const Eigen::Vector3d& axis,
                                         double noise_floor = 1e-13);

}  // namespace zbsim
