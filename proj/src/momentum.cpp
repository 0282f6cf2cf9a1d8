#include "zbsim/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zbsim {

namespace {

LinearForm helicity_form(std::size_t mode_count, std::size_t k_index, int helicity) {
  auto form = LinearForm::zero(mode_count);
  const auto weights = helicity_combination(helicity);
  for (int s = 0; s < 4; ++s) {
    form.ann(static_cast<Eigen::Index>(FockSpace::mode_id(k_index, s))) = weights[static_cast<std::size_t>(s)];
  }
  return form;
}

std::array<QuadraticBuilder, 3> builders(std::size_t mode_count) {
  return {QuadraticBuilder(mode_count), QuadraticBuilder(mode_count), QuadraticBuilder(mode_count)};
}

VectorOperator zero_vector_operator(std::size_t mode_count) {
  return {QuadraticForm::zero(mode_count), QuadraticForm::zero(mode_count), QuadraticForm::zero(mode_count)};
}

VectorOperator scaled(cd factor, const VectorOperator& x) { return {factor * x[0], factor * x[1], factor * x[2]}; }

VectorOperator oscillating_sum(const std::vector<ZbTerm>& terms, std::size_t mode_count, double t) {
  auto out = zero_vector_operator(mode_count);
  for (const auto& term : terms) {
    const double phase = 2.0 * term.omega * t;
    const cd forward(std::cos(phase), -std::sin(phase));
    out = out + scaled(forward, term.forward) + scaled(std::conj(forward), adjoint(term.forward));
  }
  return out;
}

}  // namespace

VectorOperator operator+(const VectorOperator& a, const VectorOperator& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

VectorOperator operator-(const VectorOperator& a, const VectorOperator& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

VectorOperator adjoint(const VectorOperator& x) { return {adjoint(x[0]), adjoint(x[1]), adjoint(x[2])}; }

VectorOperator momentum_oracle(const FieldModel& fields, double t, const Eigen::VectorXd& weight, double prune) {
  const auto& geometry = fields.modes().geometry();
  const auto points = static_cast<Eigen::Index>(geometry.point_count());
  if (weight.size() != 0 && weight.size() != points) throw std::invalid_argument("weight does not match the grid");
  const Eigen::VectorXd w =
      (weight.size() == 0 ? Eigen::VectorXd::Ones(points) : weight) * geometry.cell_volume();

  std::array<GridLinearForms, 3> e, b;
  for (int c = 0; c < 3; ++c) {
    e[static_cast<std::size_t>(c)] = fields.electric().on_grid(c, t);
    b[static_cast<std::size_t>(c)] = fields.magnetic().on_grid(c, t);
  }
  VectorOperator j;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto u = (i + 1) % 3;
    const auto v = (i + 2) % 3;
    j[i] = quadrature_product(e[u], b[v], w, prune) - quadrature_product(e[v], b[u], w, prune);
  }
  return j;
}

VectorOperator MomentumDecomposition::term_zb_a(double t) const {
  return oscillating_sum(zb_a, classic[0].mode_count(), t);
}

VectorOperator MomentumDecomposition::term_zb_b(double t) const {
  return oscillating_sum(zb_b, classic[0].mode_count(), t);
}

VectorOperator MomentumDecomposition::at(double t) const { return classic + cross + term_zb_a(t) + term_zb_b(t); }

MomentumDecomposition momentum_closed_form(const FieldModel& fields) {
  const auto& modes = fields.modes();
  const auto& bases = fields.bases();
  const std::size_t m = 4 * modes.size();
  const double r = std::sqrt(0.5);

  auto classic = builders(m);
  auto cross = builders(m);
  MomentumDecomposition out;

  for (std::size_t q = 0; q < modes.size(); ++q) {
    const double omega = modes[q].omega;
    const auto minus = modes.negated(q);
    const auto a0 = helicity_form(m, q, 0);
    const auto a0_minus = helicity_form(m, minus, 0);
    auto zb_a = builders(m);
    auto zb_b = builders(m);

    for (int lambda : {1, -1}) {
      const auto a = helicity_form(m, q, lambda);
      const auto a_minus = helicity_form(m, minus, lambda);
      const auto& eps = bases[q].eps(lambda);
      const auto& eps_minus = bases[minus].eps(lambda);
      for (std::size_t i = 0; i < 3; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        classic[i].add_product(modes[q].k(ii), adjoint(a), a);
        cross[i].add_product(-omega * r * eps(ii), adjoint(a0), a);
        cross[i].add_product(-omega * r * std::conj(eps(ii)), adjoint(a), a0);
        zb_a[i].add_product(0.5 * omega * r * eps(ii), a, a0_minus);
        zb_b[i].add_product(0.5 * omega * r * eps_minus(ii), a0, a_minus);
      }
    }
    ZbTerm term_a{q, omega, {}}, term_b{q, omega, {}};
    for (std::size_t i = 0; i < 3; ++i) {
      term_a.forward[i] = zb_a[i].build();
      term_b.forward[i] = zb_b[i].build();
    }
    out.zb_a.push_back(std::move(term_a));
    out.zb_b.push_back(std::move(term_b));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    out.classic[i] = classic[i].build();
    out.cross[i] = cross[i].build();
  }
  return out;
}

MomentumDecomposition group_by_frequency(const MomentumDecomposition& j, double omega_tol) {
  MomentumDecomposition out;
  out.classic = j.classic;
  out.cross = j.cross;
  const auto merge = [&](const std::vector<ZbTerm>& terms) {
    std::vector<ZbTerm> merged;
    for (const auto& term : terms) {
      auto it = std::find_if(merged.begin(), merged.end(),
                             [&](const ZbTerm& m) { return std::abs(m.omega - term.omega) <= omega_tol; });
      if (it == merged.end()) merged.push_back(term);
      else it->forward = it->forward + term.forward;
    }
    return merged;
  };
  out.zb_a = merge(j.zb_a);
  out.zb_b = merge(j.zb_b);
  return out;
}

OperatorComparison compare_operators(const FockSpace& space, const VectorOperator& a, const VectorOperator& b) {
  OperatorComparison out;
  for (std::size_t i = 0; i < 3; ++i) {
    auto diff = a[i] - b[i];
    out.constant_offset(static_cast<Eigen::Index>(i)) = diff.constant;
    diff.constant = 0.0;
    out.max_entry = std::max(out.max_entry, max_entry(diff, space));
  }
  return out;
}

Eigen::Vector3cd expectation(const FockSpace& space, const VectorOperator& j, const StateVector& psi,
                             double norm_tol) {
  const cd norm = eta_inner(space, psi, psi);
  if (std::abs(norm) <= norm_tol) throw ZeroNormState("state has vanishing eta-norm; expectation undefined");
  Eigen::Vector3cd out;
  for (std::size_t i = 0; i < 3; ++i) {
    out(static_cast<Eigen::Index>(i)) = eta_inner(space, psi, apply(j[i], space, psi)) / norm;
  }
  return out;
}

Eigen::Vector3cd MomentumProfile::zb_at(double t) const {
  Eigen::Vector3cd out = Eigen::Vector3cd::Zero();
  for (const auto& o : oscillations) {
    const double phase = 2.0 * o.omega * t;
    const cd forward(std::cos(phase), -std::sin(phase));
    out += forward * o.forward + std::conj(forward) * o.backward;
  }
  return out;
}

Eigen::Vector3cd MomentumProfile::at(double t) const { return classic + cross + zb_at(t); }

MomentumProfile momentum_profile(const FockSpace& space, const MomentumDecomposition& j, const StateVector& psi,
                                 double norm_tol) {
  if (j.zb_a.size() != j.zb_b.size()) throw std::invalid_argument("inconsistent momentum decomposition");
  for (std::size_t n = 0; n < j.zb_a.size(); ++n)
    if (j.zb_a[n].omega != j.zb_b[n].omega) throw std::invalid_argument("inconsistent momentum decomposition");
  MomentumProfile out;
  out.classic = expectation(space, j.classic, psi, norm_tol);
  out.cross = expectation(space, j.cross, psi, norm_tol);
  for (std::size_t n = 0; n < j.zb_a.size(); ++n) {
    const auto forward = j.zb_a[n].forward + j.zb_b[n].forward;
    MomentumProfile::Oscillation o;
    o.k_index = j.zb_a[n].k_index;
    o.omega = j.zb_a[n].omega;
    o.forward = expectation(space, forward, psi, norm_tol);
    o.backward = expectation(space, adjoint(forward), psi, norm_tol);
    out.oscillations.push_back(o);
  }
  return out;
}

std::vector<double> zb_sample_times(double omega, int count, double periods) {
  if (!(omega > 0.0) || count < 2 || !(periods > 0.0)) throw std::invalid_argument("invalid time sampling");
  const double span = periods * std::numbers::pi / omega;
  std::vector<double> times(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) times[static_cast<std::size_t>(n)] = span * n / count;
  return times;
}

namespace {

void push_sample(TimeSeries& series, double t, const Eigen::Vector3cd& value) {
  series.t.push_back(t);
  series.j.push_back(value.real());
  series.im_residual.push_back(value.imag().cwiseAbs().maxCoeff());
}

}  // namespace

TimeSeries expectation_series(const MomentumProfile& profile, const std::vector<double>& times) {
  TimeSeries series;
  for (double t : times) push_sample(series, t, profile.at(t));
  return series;
}

TimeSeries expectation_series(const FockSpace& space, const std::function<VectorOperator(double)>& source,
                              const StateVector& psi, const std::vector<double>& times, double norm_tol) {
  TimeSeries series;
  for (double t : times) push_sample(series, t, expectation(space, source(t), psi, norm_tol));
  return series;
}

std::vector<double> power_spectrum(const TimeSeries& series) {
  const auto n = series.j.size();
  if (n == 0) return {};
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& v : series.j) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> power(n / 2 + 1, 0.0);
  for (std::size_t bin = 0; bin < power.size(); ++bin) {
    Eigen::Vector3cd sum = Eigen::Vector3cd::Zero();
    for (std::size_t s = 0; s < n; ++s) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>((bin * s) % n) / static_cast<double>(n);
      sum += cd(std::cos(phase), std::sin(phase)) * (series.j[s] - mean).cast<cd>();
    }
    power[bin] = sum.squaredNorm();
  }
  return power;
}

OscillationSummary summarize_oscillation(const TimeSeries& series, const Eigen::Vector3d& axis, double noise_floor) {
  OscillationSummary out;
  const auto n = series.j.size();
  if (n < 2) throw std::invalid_argument("series too short");
  for (double im : series.im_residual) out.max_im_residual = std::max(out.max_im_residual, im);
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& v : series.j) mean += v;
  mean /= static_cast<double>(n);
  const Eigen::Vector3d unit = axis.normalized();
  for (const auto& v : series.j) {
    out.amplitude = std::max(out.amplitude, (v - mean).norm());
    out.max_parallel = std::max(out.max_parallel, std::abs((v - mean).dot(unit)));
  }
  if (out.amplitude > 0.0) out.direction_cosine = out.max_parallel / out.amplitude;

  const auto power = power_spectrum(series);
  std::size_t peak = 0;
  for (std::size_t bin = 1; bin < power.size(); ++bin)
    if (power[bin] > (peak == 0 ? 0.0 : power[peak])) peak = bin;
  const double dt = series.t[1] - series.t[0];
  if (peak > 0 && out.amplitude > noise_floor) {
    out.angular_frequency = 2.0 * std::numbers::pi * static_cast<double>(peak) / (static_cast<double>(n) * dt);
  }
  return out;
}

}  // namespace zbsim
