#include "zbsim/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace zbsim {

namespace {

const cd kI(0.0, 1.0);

// Row a of a 3-column block, as a vector.
Eigen::Vector3cd row3(const Eigen::MatrixXcd& m, Eigen::Index a, int first = 0) {
  return {m(a, first), m(a, first + 1), m(a, first + 2)};
}

Eigen::Vector3cd cross(const Eigen::Vector3cd& u, const Eigen::Vector3cd& v) {
  return {u(1) * v(2) - u(2) * v(1), u(2) * v(0) - u(0) * v(2), u(0) * v(1) - u(1) * v(0)};
}

}  // namespace

SpectralField::SpectralField(BoxGeometry geometry, Eigen::MatrixXd k, Eigen::VectorXd omega, Eigen::MatrixXcd ann,
                             Eigen::MatrixXcd cre)
    : geometry_(geometry), k_(std::move(k)), omega_(std::move(omega)), ann_(std::move(ann)), cre_(std::move(cre)) {}

SpectralField::SpectralField(const ModeSet& modes, Eigen::MatrixXcd ann, Eigen::MatrixXcd cre)
    : geometry_(modes.geometry()) {
  const auto m = static_cast<Eigen::Index>(4 * modes.size());
  if (ann.rows() != m || cre.rows() != m || ann.cols() != cre.cols()) {
    throw std::invalid_argument("field coefficients do not match the mode set");
  }
  k_.resize(m, 3);
  omega_.resize(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const auto& mode = modes[FockSpace::k_of(static_cast<std::size_t>(a))];
    k_.row(a) = mode.k.transpose();
    omega_(a) = mode.omega;
  }
  ann_ = std::move(ann);
  cre_ = std::move(cre);
}

SpectralField SpectralField::zero(const ModeSet& modes, int components) {
  const auto m = static_cast<Eigen::Index>(4 * modes.size());
  return {modes, Eigen::MatrixXcd::Zero(m, components), Eigen::MatrixXcd::Zero(m, components)};
}

SpectralField SpectralField::slice(int first, int count) const {
  if (first < 0 || count < 0 || first + count > components()) throw std::out_of_range("field component slice");
  return {geometry_, k_, omega_, ann_.middleCols(first, count), cre_.middleCols(first, count)};
}

SpectralField SpectralField::time_derivative() const {
  const Eigen::VectorXcd up = -kI * omega_.cast<cd>();
  return {geometry_, k_, omega_, up.asDiagonal() * ann_, (-up).asDiagonal() * cre_};
}

SpectralField SpectralField::gradient() const {
  if (components() != 1) throw std::invalid_argument("gradient of a non-scalar field");
  const auto m = ann_.rows();
  Eigen::MatrixXcd ann(m, 3), cre(m, 3);
  for (int i = 0; i < 3; ++i) {
    ann.col(i) = (kI * k_.col(i).cast<cd>()).cwiseProduct(ann_.col(0));
    cre.col(i) = (-kI * k_.col(i).cast<cd>()).cwiseProduct(cre_.col(0));
  }
  return {geometry_, k_, omega_, ann, cre};
}

SpectralField SpectralField::divergence() const {
  if (components() != 3) throw std::invalid_argument("divergence of a non-vector field");
  const auto m = ann_.rows();
  Eigen::MatrixXcd ann = Eigen::MatrixXcd::Zero(m, 1), cre = Eigen::MatrixXcd::Zero(m, 1);
  for (int i = 0; i < 3; ++i) {
    ann.col(0) += (kI * k_.col(i).cast<cd>()).cwiseProduct(ann_.col(i));
    cre.col(0) += (-kI * k_.col(i).cast<cd>()).cwiseProduct(cre_.col(i));
  }
  return {geometry_, k_, omega_, ann, cre};
}

SpectralField SpectralField::curl() const {
  if (components() != 3) throw std::invalid_argument("curl of a non-vector field");
  const auto m = ann_.rows();
  Eigen::MatrixXcd ann(m, 3), cre(m, 3);
  for (Eigen::Index a = 0; a < m; ++a) {
    const Eigen::Vector3cd k = k_.row(a).transpose().cast<cd>();
    ann.row(a) = cross(kI * k, row3(ann_, a)).transpose();
    cre.row(a) = cross(-kI * k, row3(cre_, a)).transpose();
  }
  return {geometry_, k_, omega_, ann, cre};
}

void SpectralField::require_compatible(const SpectralField& other) const {
  if (ann_.rows() != other.ann_.rows() || ann_.cols() != other.ann_.cols()) {
    throw std::invalid_argument("fields of different shapes");
  }
}

SpectralField SpectralField::operator+(const SpectralField& other) const {
  require_compatible(other);
  return {geometry_, k_, omega_, ann_ + other.ann_, cre_ + other.cre_};
}

SpectralField SpectralField::operator-(const SpectralField& other) const {
  require_compatible(other);
  return {geometry_, k_, omega_, ann_ - other.ann_, cre_ - other.cre_};
}

SpectralField SpectralField::scaled(cd factor) const { return {geometry_, k_, omega_, factor * ann_, factor * cre_}; }

LinearForm SpectralField::at(int component, const Eigen::Vector3d& x, double t) const {
  if (component < 0 || component >= components()) throw std::out_of_range("field component");
  const auto m = ann_.rows();
  LinearForm out{Eigen::VectorXcd(m), Eigen::VectorXcd(m)};
  for (Eigen::Index a = 0; a < m; ++a) {
    const double phase = omega_(a) * t - k_.row(a).dot(x);
    const cd wave(std::cos(phase), -std::sin(phase));
    out.ann(a) = ann_(a, component) * wave;
    out.cre(a) = cre_(a, component) * std::conj(wave);
  }
  return out;
}

GridLinearForms SpectralField::on_grid(int component, double t) const {
  if (component < 0 || component >= components()) throw std::out_of_range("field component");
  const auto points = static_cast<Eigen::Index>(geometry_.point_count());
  const auto m = ann_.rows();
  GridLinearForms out{Eigen::MatrixXcd(points, m), Eigen::MatrixXcd(points, m)};
  for (Eigen::Index p = 0; p < points; ++p) {
    const Eigen::Vector3d x = geometry_.point(static_cast<std::size_t>(p));
    for (Eigen::Index a = 0; a < m; ++a) {
      const double phase = omega_(a) * t - k_.row(a).dot(x);
      const cd wave(std::cos(phase), -std::sin(phase));
      out.ann(p, a) = ann_(a, component) * wave;
      out.cre(p, a) = cre_(a, component) * std::conj(wave);
    }
  }
  return out;
}

double SpectralField::max_coefficient() const {
  if (ann_.size() == 0) return 0.0;
  return std::max(ann_.cwiseAbs().maxCoeff(), cre_.cwiseAbs().maxCoeff());
}

FieldModel::FieldModel(const ModeSet& modes, FieldOptions options)
    : modes_(modes),
      bases_(polarization_table(modes)),
      potential_(SpectralField::zero(modes, 4)),
      electric_(SpectralField::zero(modes, 3)),
      magnetic_(SpectralField::zero(modes, 3)) {
  const auto m = static_cast<Eigen::Index>(4 * modes.size());
  const double volume = modes.geometry().volume();
  Eigen::MatrixXcd a_ann = Eigen::MatrixXcd::Zero(m, 4);
  Eigen::MatrixXcd e_ann = Eigen::MatrixXcd::Zero(m, 3);
  Eigen::MatrixXcd b_ann = Eigen::MatrixXcd::Zero(m, 3);
  for (std::size_t q = 0; q < modes.size(); ++q) {
    const double omega = modes[q].omega;
    const double norm = 1.0 / std::sqrt(2.0 * omega * volume);
    for (int s = 0; s < 4; ++s) {
      a_ann.row(static_cast<Eigen::Index>(FockSpace::mode_id(q, s))) = norm * bases_[q].four(s).transpose();
    }
    for (int lambda : {1, -1, 0}) {
      const double c = std::sqrt(omega / volume) / std::sqrt(1.0 + lambda * lambda);
      const auto weights = helicity_combination(lambda);
      const Eigen::Vector3cd& u = bases_[q].eps(lambda);
      for (int s = 0; s < 4; ++s) {
        const cd w = weights[static_cast<std::size_t>(s)];
        if (w == 0.0) continue;
        const auto row = static_cast<Eigen::Index>(FockSpace::mode_id(q, s));
        e_ann.row(row) += (c * w * u).transpose();
        b_ann.row(row) += (c * options.helicity_phase * kI * double(lambda) * w * u).transpose();
      }
    }
  }
  // real fields: the creation part is the conjugate of the annihilation part
  potential_ = SpectralField(modes, a_ann, a_ann.conjugate());
  electric_ = SpectralField(modes, e_ann, e_ann.conjugate());
  magnetic_ = SpectralField(modes, b_ann, b_ann.conjugate());
}

SpectralField FieldModel::electric_from_potential() const {
  return potential_.slice(0, 1).gradient().scaled(-1.0) - potential_.slice(1, 3).time_derivative();
}

SpectralField FieldModel::magnetic_from_potential() const { return potential_.slice(1, 3).curl(); }

namespace {

template <std::size_t D>
std::array<OperatorMatrix, D> materialize_components(const FockSpace& space, const SpectralField& field,
                                                     const Eigen::Vector3d& x, double t) {
  std::array<OperatorMatrix, D> out;
  for (std::size_t c = 0; c < D; ++c) out[c] = materialize(field.at(static_cast<int>(c), x, t), space);
  return out;
}

}  // namespace

std::array<OperatorMatrix, 4> potential_A(const FockSpace& space, const FieldModel& fields, const Eigen::Vector3d& x,
                                          double t) {
  return materialize_components<4>(space, fields.potential(), x, t);
}

std::array<OperatorMatrix, 3> field_E(const FockSpace& space, const FieldModel& fields, const Eigen::Vector3d& x,
                                      double t) {
  return materialize_components<3>(space, fields.electric(), x, t);
}

std::array<OperatorMatrix, 3> field_B(const FockSpace& space, const FieldModel& fields, const Eigen::Vector3d& x,
                                      double t) {
  return materialize_components<3>(space, fields.magnetic(), x, t);
}

double maxwell_residual(const FockSpace& space, const FieldModel& fields, double t) {
  const auto divergence = fields.magnetic().divergence();
  const auto faraday = fields.magnetic().time_derivative() + fields.electric().curl();
  const auto& geometry = fields.modes().geometry();
  double worst = 0.0;
  for (std::size_t p = 0; p < geometry.point_count(); ++p) {
    const auto x = geometry.point(p);
    worst = std::max(worst, max_entry(divergence.at(0, x, t), space));
    for (int c = 0; c < 3; ++c) worst = std::max(worst, max_entry(faraday.at(c, x, t), space));
  }
  return worst;
}

}  // namespace zbsim
