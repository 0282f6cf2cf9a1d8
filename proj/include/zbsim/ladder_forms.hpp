#pragma once

#include <cstddef>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "zbsim/fock.hpp"

namespace zbsim {

/// sum_a ann[a] b_a + cre[a] dagger(b_a) over the Fock modes.
struct LinearForm {
  Eigen::VectorXcd ann;
  Eigen::VectorXcd cre;

  static LinearForm zero(std::size_t mode_count);
  std::size_t mode_count() const { return static_cast<std::size_t>(ann.size()); }
};

LinearForm operator+(const LinearForm& a, const LinearForm& b);
LinearForm operator-(const LinearForm& a, const LinearForm& b);
LinearForm operator*(cd scale, const LinearForm& a);

/// eta-adjoint of a linear form.
LinearForm adjoint(const LinearForm& form);

StateVector apply(const LinearForm& form, const FockSpace& space, const StateVector& psi);
OperatorMatrix materialize(const LinearForm& form, const FockSpace& space);

/// Largest |entry| of the materialized operator, without materializing it.
double max_entry(const LinearForm& form, const FockSpace& space);

/// The same linear form sampled at every grid point: row x holds the
/// coefficients at point x.
struct GridLinearForms {
  Eigen::MatrixXcd ann;
  Eigen::MatrixXcd cre;

  LinearForm at(std::size_t point) const;
};

using CoefficientMatrix = Eigen::SparseMatrix<cd>;

/// Normal-ordered quadratic operator
///   sum N_ab dagger(b_a) b_b + sum A_ab b_a b_b + sum C_ab dagger(b_a) dagger(b_b) + c.
/// A and C are kept symmetric.
struct QuadraticForm {
  CoefficientMatrix cre_ann;
  CoefficientMatrix ann_ann;
  CoefficientMatrix cre_cre;
  cd constant = 0.0;

  static QuadraticForm zero(std::size_t mode_count);
  std::size_t mode_count() const { return static_cast<std::size_t>(cre_ann.rows()); }
};

QuadraticForm operator+(const QuadraticForm& a, const QuadraticForm& b);
QuadraticForm operator-(const QuadraticForm& a, const QuadraticForm& b);
QuadraticForm operator*(cd scale, const QuadraticForm& a);

/// eta-adjoint.
QuadraticForm adjoint(const QuadraticForm& form);

/// Normal-ordered f * g, the c-number from [b_a, dagger(b_a)] = -eta_aa kept in
/// the constant.
QuadraticForm ordered_product(const LinearForm& f, const LinearForm& g);

/// sum_x w(x) f(x) g(x) computed by dense accumulation over the grid, with the
/// same normal-ordering rule as ordered_product. Coefficients with
/// |value| <= prune are dropped. An empty weight means w = 1.
QuadraticForm quadrature_product(const GridLinearForms& f, const GridLinearForms& g,
                                 const Eigen::VectorXd& weight, double prune);

StateVector apply(const QuadraticForm& form, const FockSpace& space, const StateVector& psi);
OperatorMatrix materialize(const QuadraticForm& form, const FockSpace& space);

/// eta-expectation; throws ZeroNormState like the matrix version.
cd expectation(const FockSpace& space, const QuadraticForm& form, const StateVector& psi, double norm_tol = 1e-10);

/// Largest |entry| of the materialized operator, computed column by column.
double max_entry(const QuadraticForm& form, const FockSpace& space);

/// Largest |coefficient| of a - b (operator part), and the constant offsets.
double max_coefficient_difference(const QuadraticForm& a, const QuadraticForm& b);

/// Accumulates sparse contributions before assembling a QuadraticForm.
class QuadraticBuilder {
 public:
  explicit QuadraticBuilder(std::size_t mode_count) : mode_count_(mode_count) {}

  /// Adds scale * f * g for sparse f, g (normal-ordered).
  void add_product(cd scale, const LinearForm& f, const LinearForm& g);
  void add_constant(cd value) { constant_ += value; }
  QuadraticForm build() const;

 private:
  std::size_t mode_count_;
  std::vector<Eigen::Triplet<cd>> cre_ann_;
  std::vector<Eigen::Triplet<cd>> ann_ann_;
  std::vector<Eigen::Triplet<cd>> cre_cre_;
  cd constant_ = 0.0;
};

}  // namespace zbsim
