#include "zbsim/ladder_forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zbsim {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("ladder forms over different mode counts");
}

void require_space(std::size_t modes, const FockSpace& space, Eigen::Index amplitudes) {
  if (modes != space.mode_count()) throw std::invalid_argument("ladder form does not match the Fock space");
  if (amplitudes >= 0 && amplitudes != static_cast<Eigen::Index>(space.dimension())) {
    throw std::invalid_argument("state dimension mismatch");
  }
}

CoefficientMatrix sparsify(const Eigen::MatrixXcd& dense, double prune) {
  std::vector<Eigen::Triplet<cd>> entries;
  for (Eigen::Index c = 0; c < dense.cols(); ++c)
    for (Eigen::Index r = 0; r < dense.rows(); ++r)
      if (std::abs(dense(r, c)) > prune) entries.emplace_back(r, c, dense(r, c));
  CoefficientMatrix out(dense.rows(), dense.cols());
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

CoefficientMatrix symmetrized(const CoefficientMatrix& m) {
  CoefficientMatrix t = m.transpose();
  CoefficientMatrix s = 0.5 * (m + t);
  s.prune(cd(0.0));
  return s;
}

std::vector<Eigen::Index> nonzeros(const Eigen::VectorXcd& v) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index a = 0; a < v.size(); ++a)
    if (v(a) != 0.0) out.push_back(a);
  return out;
}

// Calls emit(j, value) for every component of form |i>.
template <class Emit>
void act_linear(const LinearForm& form, const FockSpace& space, const std::vector<Eigen::Index>& ann,
                const std::vector<Eigen::Index>& cre, std::size_t i, Emit&& emit) {
  for (auto a : ann) {
    if (auto hit = space.annihilate(static_cast<std::size_t>(a), i)) emit(hit->first, form.ann(a) * hit->second);
  }
  for (auto a : cre) {
    if (auto hit = space.create(static_cast<std::size_t>(a), i)) emit(hit->first, form.cre(a) * hit->second);
  }
}

template <class Emit>
void act_quadratic(const QuadraticForm& form, const FockSpace& space, std::size_t i, Emit&& emit) {
  if (form.constant != 0.0) emit(i, form.constant);
  const auto occupied = space.occupied(i);
  for (std::size_t p = 0; p < occupied.size(); ++p) {
    if (p > 0 && occupied[p] == occupied[p - 1]) continue;
    const auto b = static_cast<Eigen::Index>(occupied[p]);
    const auto first = space.annihilate(static_cast<std::size_t>(b), i);
    for (CoefficientMatrix::InnerIterator it(form.cre_ann, b); it; ++it) {
      if (auto second = space.create(static_cast<std::size_t>(it.row()), first->first)) {
        emit(second->first, it.value() * first->second * second->second);
      }
    }
    for (CoefficientMatrix::InnerIterator it(form.ann_ann, b); it; ++it) {
      if (auto second = space.annihilate(static_cast<std::size_t>(it.row()), first->first)) {
        emit(second->first, it.value() * first->second * second->second);
      }
    }
  }
  if (space.photon_number(i) + 2 > space.occupation_cap()) return;
  for (Eigen::Index b = 0; b < form.cre_cre.outerSize(); ++b) {
    CoefficientMatrix::InnerIterator it(form.cre_cre, b);
    if (!it) continue;
    const auto first = space.create(static_cast<std::size_t>(b), i);
    for (; it; ++it) {
      const auto second = space.create(static_cast<std::size_t>(it.row()), first->first);
      emit(second->first, it.value() * first->second * second->second);
    }
  }
}

}  // namespace

LinearForm LinearForm::zero(std::size_t mode_count) {
  const auto m = static_cast<Eigen::Index>(mode_count);
  return {Eigen::VectorXcd::Zero(m), Eigen::VectorXcd::Zero(m)};
}

LinearForm operator+(const LinearForm& a, const LinearForm& b) {
  require_same_size(a.mode_count(), b.mode_count());
  return {a.ann + b.ann, a.cre + b.cre};
}

LinearForm operator-(const LinearForm& a, const LinearForm& b) {
  require_same_size(a.mode_count(), b.mode_count());
  return {a.ann - b.ann, a.cre - b.cre};
}

LinearForm operator*(cd scale, const LinearForm& a) { return {scale * a.ann, scale * a.cre}; }

LinearForm adjoint(const LinearForm& form) { return {form.cre.conjugate(), form.ann.conjugate()}; }

StateVector apply(const LinearForm& form, const FockSpace& space, const StateVector& psi) {
  require_space(form.mode_count(), space, psi.amplitudes.size());
  const auto ann = nonzeros(form.ann);
  const auto cre = nonzeros(form.cre);
  StateVector out{Eigen::VectorXcd::Zero(psi.amplitudes.size())};
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const cd amp = psi.amplitudes(static_cast<Eigen::Index>(i));
    if (amp == 0.0) continue;
    act_linear(form, space, ann, cre, i,
               [&](std::size_t j, cd v) { out.amplitudes(static_cast<Eigen::Index>(j)) += v * amp; });
  }
  return out;
}

OperatorMatrix materialize(const LinearForm& form, const FockSpace& space) {
  require_space(form.mode_count(), space, -1);
  const auto ann = nonzeros(form.ann);
  const auto cre = nonzeros(form.cre);
  std::vector<Eigen::Triplet<cd>> entries;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    act_linear(form, space, ann, cre, i, [&](std::size_t j, cd v) {
      entries.emplace_back(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i), v);
    });
  }
  const auto n = static_cast<Eigen::Index>(space.dimension());
  SparseMatrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return {m};
}

double max_entry(const LinearForm& form, const FockSpace& space) {
  require_space(form.mode_count(), space, -1);
  double worst = 0.0;
  if (form.mode_count() > 0) worst = std::max(form.ann.cwiseAbs().maxCoeff(), form.cre.cwiseAbs().maxCoeff());
  return worst * std::sqrt(static_cast<double>(space.occupation_cap()));
}

LinearForm GridLinearForms::at(std::size_t point) const {
  const auto x = static_cast<Eigen::Index>(point);
  return {ann.row(x).transpose(), cre.row(x).transpose()};
}

QuadraticForm QuadraticForm::zero(std::size_t mode_count) {
  const auto m = static_cast<Eigen::Index>(mode_count);
  return {CoefficientMatrix(m, m), CoefficientMatrix(m, m), CoefficientMatrix(m, m), 0.0};
}

QuadraticForm operator+(const QuadraticForm& a, const QuadraticForm& b) {
  require_same_size(a.mode_count(), b.mode_count());
  return {a.cre_ann + b.cre_ann, a.ann_ann + b.ann_ann, a.cre_cre + b.cre_cre, a.constant + b.constant};
}

QuadraticForm operator-(const QuadraticForm& a, const QuadraticForm& b) {
  require_same_size(a.mode_count(), b.mode_count());
  return {a.cre_ann - b.cre_ann, a.ann_ann - b.ann_ann, a.cre_cre - b.cre_cre, a.constant - b.constant};
}

QuadraticForm operator*(cd scale, const QuadraticForm& a) {
  return {scale * a.cre_ann, scale * a.ann_ann, scale * a.cre_cre, scale * a.constant};
}

QuadraticForm adjoint(const QuadraticForm& form) {
  return {form.cre_ann.adjoint(), form.cre_cre.adjoint(), form.ann_ann.adjoint(), std::conj(form.constant)};
}

void QuadraticBuilder::add_product(cd scale, const LinearForm& f, const LinearForm& g) {
  require_same_size(f.mode_count(), mode_count_);
  require_same_size(g.mode_count(), mode_count_);
  const auto fa = nonzeros(f.ann);
  const auto fc = nonzeros(f.cre);
  const auto ga = nonzeros(g.ann);
  const auto gc = nonzeros(g.cre);
  for (auto a : fa)
    for (auto b : ga) ann_ann_.emplace_back(a, b, scale * f.ann(a) * g.ann(b));
  for (auto a : fa) {
    for (auto b : gc) {
      cre_ann_.emplace_back(b, a, scale * f.ann(a) * g.cre(b));
      if (a == b) constant_ += scale * f.ann(a) * g.cre(a) * FockSpace::commutator_sign(static_cast<std::size_t>(a));
    }
  }
  for (auto a : fc)
    for (auto b : ga) cre_ann_.emplace_back(a, b, scale * f.cre(a) * g.ann(b));
  for (auto a : fc)
    for (auto b : gc) cre_cre_.emplace_back(a, b, scale * f.cre(a) * g.cre(b));
}

QuadraticForm QuadraticBuilder::build() const {
  auto out = QuadraticForm::zero(mode_count_);
  out.cre_ann.setFromTriplets(cre_ann_.begin(), cre_ann_.end());
  out.cre_ann.prune(cd(0.0));
  CoefficientMatrix ann(out.ann_ann.rows(), out.ann_ann.cols());
  ann.setFromTriplets(ann_ann_.begin(), ann_ann_.end());
  out.ann_ann = symmetrized(ann);
  CoefficientMatrix cre(out.cre_cre.rows(), out.cre_cre.cols());
  cre.setFromTriplets(cre_cre_.begin(), cre_cre_.end());
  out.cre_cre = symmetrized(cre);
  out.constant = constant_;
  return out;
}

QuadraticForm ordered_product(const LinearForm& f, const LinearForm& g) {
  require_same_size(f.mode_count(), g.mode_count());
  QuadraticBuilder builder(f.mode_count());
  builder.add_product(1.0, f, g);
  return builder.build();
}

QuadraticForm quadrature_product(const GridLinearForms& f, const GridLinearForms& g,
                                 const Eigen::VectorXd& weight, double prune) {
  if (f.ann.rows() != g.ann.rows() || f.ann.cols() != g.ann.cols() || f.cre.cols() != f.ann.cols() ||
      g.cre.cols() != g.ann.cols()) {
    throw std::invalid_argument("grid forms of different shapes");
  }
  if (weight.size() != 0 && weight.size() != f.ann.rows()) {
    throw std::invalid_argument("weight does not match the grid");
  }
  Eigen::MatrixXcd fa = f.ann;
  Eigen::MatrixXcd fc = f.cre;
  if (weight.size() != 0) {
    fa = weight.cast<cd>().asDiagonal() * fa;
    fc = weight.cast<cd>().asDiagonal() * fc;
  }
  const Eigen::MatrixXcd ann = fa.transpose() * g.ann;
  const Eigen::MatrixXcd cre = fc.transpose() * g.cre;
  const Eigen::MatrixXcd mixed = fc.transpose() * g.ann + g.cre.transpose() * fa;
  const Eigen::RowVectorXcd diagonal = fa.cwiseProduct(g.cre).colwise().sum();

  QuadraticForm out;
  out.cre_ann = sparsify(mixed, prune);
  out.ann_ann = sparsify(0.5 * (ann + ann.transpose()), prune);
  out.cre_cre = sparsify(0.5 * (cre + cre.transpose()), prune);
  for (Eigen::Index a = 0; a < diagonal.size(); ++a) {
    out.constant += diagonal(a) * FockSpace::commutator_sign(static_cast<std::size_t>(a));
  }
  return out;
}

StateVector apply(const QuadraticForm& form, const FockSpace& space, const StateVector& psi) {
  require_space(form.mode_count(), space, psi.amplitudes.size());
  StateVector out{Eigen::VectorXcd::Zero(psi.amplitudes.size())};
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const cd amp = psi.amplitudes(static_cast<Eigen::Index>(i));
    if (amp == 0.0) continue;
    act_quadratic(form, space, i,
                  [&](std::size_t j, cd v) { out.amplitudes(static_cast<Eigen::Index>(j)) += v * amp; });
  }
  return out;
}

OperatorMatrix materialize(const QuadraticForm& form, const FockSpace& space) {
  require_space(form.mode_count(), space, -1);
  std::vector<Eigen::Triplet<cd>> entries;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    act_quadratic(form, space, i, [&](std::size_t j, cd v) {
      entries.emplace_back(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i), v);
    });
  }
  const auto n = static_cast<Eigen::Index>(space.dimension());
  SparseMatrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return {m};
}

cd expectation(const FockSpace& space, const QuadraticForm& form, const StateVector& psi, double norm_tol) {
  const cd norm = eta_inner(space, psi, psi);
  if (std::abs(norm) <= norm_tol) throw ZeroNormState("state has vanishing eta-norm; expectation undefined");
  return eta_inner(space, psi, apply(form, space, psi)) / norm;
}

double max_entry(const QuadraticForm& form, const FockSpace& space) {
  require_space(form.mode_count(), space, -1);
  std::vector<cd> column(space.dimension(), 0.0);
  std::vector<std::size_t> touched;
  double worst = 0.0;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    act_quadratic(form, space, i, [&](std::size_t j, cd v) {
      if (column[j] == 0.0) touched.push_back(j);
      column[j] += v;
    });
    for (auto j : touched) {
      worst = std::max(worst, std::abs(column[j]));
      column[j] = 0.0;
    }
    touched.clear();
  }
  return worst;
}

double max_coefficient_difference(const QuadraticForm& a, const QuadraticForm& b) {
  const auto diff = a - b;
  double worst = std::abs(diff.constant);
  for (const auto* m : {&diff.cre_ann, &diff.ann_ann, &diff.cre_cre})
    for (Eigen::Index c = 0; c < m->outerSize(); ++c)
      for (CoefficientMatrix::InnerIterator it(*m, c); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

}  // namespace zbsim
