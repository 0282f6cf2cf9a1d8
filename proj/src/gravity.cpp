#include "zbsim/gravity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zbsim {

namespace {

Eigen::MatrixXcd fourier_matrix(const ModeSet& modes) {
  const auto& geometry = modes.geometry();
  const auto points = static_cast<Eigen::Index>(geometry.point_count());
  Eigen::MatrixXcd phase(points, static_cast<Eigen::Index>(modes.size()));
  for (Eigen::Index p = 0; p < points; ++p) {
    const Eigen::Vector3d x = geometry.point(static_cast<std::size_t>(p));
    for (std::size_t q = 0; q < modes.size(); ++q) {
      const double angle = modes[q].k.dot(x);
      phase(p, static_cast<Eigen::Index>(q)) = cd(std::cos(angle), std::sin(angle));
    }
  }
  return phase;
}

void require_unaliased(const ModeSet& modes, const MetricPerturbation& h) {
  const int reach = std::max({std::abs(h.q[0]), std::abs(h.q[1]), std::abs(h.q[2])});
  if (modes.geometry().grid_points <= 2 * modes.max_component() + reach) {
    throw std::invalid_argument("grid too coarse: need N > 2 n_max + max|q_i| for the perturbed constraint");
  }
}

}  // namespace

MetricPerturbation build_h00(const BoxGeometry& geometry, PerturbationKind kind, double eps_h, const IntTriple& q) {
  if (!(std::abs(eps_h) <= 0.1)) throw std::invalid_argument("eps_h outside the weak-field range |eps_h| <= 0.1");
  MetricPerturbation h;
  h.kind = kind;
  h.eps_h = eps_h;
  h.q = q;
  const auto points = static_cast<Eigen::Index>(geometry.point_count());
  h.h00.resize(points);
  h.gradient.resize(points, 3);
  if (kind == PerturbationKind::cosine) {
    if (q == IntTriple{0, 0, 0}) throw std::invalid_argument("cosine perturbation needs a nonzero lattice q");
    const Eigen::Vector3d k = (2.0 * std::numbers::pi / geometry.side_length) * Eigen::Vector3d(q[0], q[1], q[2]);
    for (Eigen::Index p = 0; p < points; ++p) {
      const double angle = k.dot(geometry.point(static_cast<std::size_t>(p)));
      h.h00(p) = eps_h * std::cos(angle);
      h.gradient.row(p) = (-eps_h * std::sin(angle) * k).transpose();
    }
  } else {
    h.q = {0, 0, 0};
    for (Eigen::Index p = 0; p < points; ++p) {
      h.h00(p) = eps_h * geometry.point(static_cast<std::size_t>(p))(2) / geometry.side_length;
      h.gradient.row(p) = Eigen::RowVector3d(0.0, 0.0, eps_h / geometry.side_length);
    }
  }
  return h;
}

Eigen::MatrixXcd constraint_field_on_grid(const FieldModel& fields, const MetricPerturbation& h) {
  const auto& a = fields.potential();
  const auto divergence = a.slice(0, 1).time_derivative() + a.slice(1, 3).divergence();
  Eigen::MatrixXcd g = divergence.on_grid(0, 0.0).ann;
  if (h.gradient.rows() != g.rows()) throw std::invalid_argument("perturbation does not match the grid");
  // A_mu d^mu h = A^i d_i h for a static h_00
  for (int i = 0; i < 3; ++i) g += h.gradient.col(i).cast<cd>().asDiagonal() * a.on_grid(1 + i, 0.0).ann;
  return g;
}

PerturbedConstraints perturbed_constraint(const FieldModel& fields, const MetricPerturbation& h) {
  if (!h.periodic()) throw std::invalid_argument("perturbed constraint needs a periodic (cosine) perturbation");
  const auto& modes = fields.modes();
  require_unaliased(modes, h);
  const Eigen::MatrixXcd g = constraint_field_on_grid(fields, h);
  const Eigen::MatrixXcd phase = fourier_matrix(modes);
  const Eigen::MatrixXcd c = phase.adjoint() * g / static_cast<double>(g.rows());
  const double floor = 1e-14 * c.cwiseAbs().maxCoeff();

  PerturbedConstraints out;
  out.sample_points = static_cast<std::size_t>(g.rows());
  for (std::size_t q = 0; q < modes.size(); ++q) {
    ConstraintRow row{q, c.row(static_cast<Eigen::Index>(q)).transpose()};
    for (auto& v : row.coefficients)
      if (std::abs(v) <= floor) v = 0.0;
    out.rows.push_back(std::move(row));
  }
  return out;
}

PhysicalSubspace perturbed_physical_states(const FockSpace& space, const PerturbedConstraints& constraints,
                                           double rel_tol) {
  auto subspace = kernel_of(space, constraints.rows, rel_tol);
  if (subspace.size() == 0) throw EmptyKernel("perturbed constraints admit no state");
  return subspace;
}

PositionSpaceResidual position_space_residual(const FockSpace& space, const FieldModel& fields,
                                              const MetricPerturbation& h, const StateVector& psi) {
  const auto& modes = fields.modes();
  const Eigen::MatrixXcd g = constraint_field_on_grid(fields, h);
  const auto points = g.rows();
  const auto m = static_cast<Eigen::Index>(space.mode_count());
  // G(x) psi for every grid point, one column each
  Eigen::MatrixXcd image(static_cast<Eigen::Index>(space.dimension()), points);
  for (Eigen::Index p = 0; p < points; ++p) {
    const LinearForm form{g.row(p).transpose(), Eigen::VectorXcd::Zero(m)};
    image.col(p) = apply(form, space, psi).amplitudes;
  }
  const Eigen::MatrixXcd phase = fourier_matrix(modes);
  // in-band Fourier components, then back to position space
  const Eigen::MatrixXcd components = image * phase.conjugate() / static_cast<double>(points);
  const Eigen::MatrixXcd band = components * phase.transpose();
  PositionSpaceResidual out;
  for (Eigen::Index p = 0; p < points; ++p) {
    out.band_limited = std::max(out.band_limited, band.col(p).norm());
    out.out_of_band = std::max(out.out_of_band, (image.col(p) - band.col(p)).norm());
  }
  return out;
}

ZbResponse zb_response(const FockSpace& space, const MomentumDecomposition& j, const StateVector& psi,
                       const std::vector<double>& times, double omega, double eps_h, double norm_tol) {
  ZbResponse out;
  out.profile = momentum_profile(space, j, psi, norm_tol);
  out.series = expectation_series(out.profile, times);
  const auto oscillation = summarize_oscillation(out.series, Eigen::Vector3d::UnitZ());
  out.summary.omega = omega;
  out.summary.eps_h = eps_h;
  out.summary.zb_amplitude = oscillation.amplitude;
  out.summary.zb_frequency = oscillation.angular_frequency;

  double largest = 0.0;
  for (const auto& o : out.profile.oscillations) largest = std::max({largest, o.forward.norm(), o.backward.norm()});
  const auto& modes = space.modes();
  for (const auto& o : out.profile.oscillations) {
    const Eigen::Vector3cd k_hat = (modes[o.k_index].k / modes[o.k_index].omega).cast<cd>();
    for (const auto* v : {&o.forward, &o.backward}) {
      if (v->norm() <= 1e-9 * largest || v->norm() == 0.0) continue;
      const double cosine = std::abs(k_hat.dot(*v)) / v->norm();
      out.summary.direction_cosine = std::max(out.summary.direction_cosine, cosine);
    }
  }
  return out;
}

}  // namespace zbsim
