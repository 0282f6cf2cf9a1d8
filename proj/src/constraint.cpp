#include "zbsim/constraint.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <Eigen/SVD>

namespace zbsim {

namespace {

std::size_t multichoose(std::size_t d, int n) {
  // C(d + n - 1, n)
  if (n == 0) return 1;
  if (d == 0) return 0;
  double value = 1.0;
  for (int j = 1; j <= n; ++j) value = value * static_cast<double>(d + static_cast<std::size_t>(j) - 1) / j;
  return static_cast<std::size_t>(std::llround(value));
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Fix the phase so the largest entry (first on ties) is real and positive.
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  Eigen::Index best = 0;
  for (Eigen::Index a = 1; a < v.size(); ++a)
    if (std::abs(v(a)) > std::abs(v(best)) * (1.0 + 1e-12)) best = a;
  if (v(best) != 0.0) v *= std::abs(v(best)) / v(best);
}

using SparseState = std::map<std::size_t, cd>;

SparseState sparse_product(const FockSpace& space, const std::vector<const Eigen::VectorXcd*>& factors) {
  SparseState current{{0, 1.0}};
  for (const auto* factor : factors) {
    SparseState next;
    for (const auto& [j, value] : current) {
      for (Eigen::Index a = 0; a < factor->size(); ++a) {
        const cd f = (*factor)(a);
        if (f == 0.0) continue;
        if (auto hit = space.create_plain(static_cast<std::size_t>(a), j)) next[hit->first] += value * f * hit->second;
      }
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace

std::vector<ConstraintRow> gauge_constraints(const FockSpace& space) {
  std::vector<ConstraintRow> rows;
  const auto weights = helicity_combination(0);
  for (std::size_t q = 0; q < space.modes().size(); ++q) {
    ConstraintRow row{q, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.mode_count()))};
    for (int s = 0; s < 4; ++s) {
      row.coefficients(static_cast<Eigen::Index>(FockSpace::mode_id(q, s))) = weights[static_cast<std::size_t>(s)];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ConstraintReport constraint_report(const FockSpace& space, const std::vector<ConstraintRow>& rows,
                                   const StateVector& psi, double tol) {
  ConstraintReport report;
  const auto m = static_cast<Eigen::Index>(space.mode_count());
  for (const auto& row : rows) {
    const LinearForm form{row.coefficients, Eigen::VectorXcd::Zero(m)};
    const double r = apply(form, space, psi).amplitudes.norm();
    report.residuals.push_back(r);
    report.max_residual = std::max(report.max_residual, r);
  }
  report.physical = report.max_residual <= tol;
  return report;
}

ConstraintReport is_physical(const FockSpace& space, const StateVector& psi, double tol) {
  return constraint_report(space, gauge_constraints(space), psi, tol);
}

PhysicalSubspace::PhysicalSubspace(const FockSpace& space, Eigen::MatrixXcd one_photon_kernel)
    : space_(&space), kernel_(std::move(one_photon_kernel)) {
  if (kernel_.rows() != static_cast<Eigen::Index>(space.mode_count())) {
    throw std::invalid_argument("kernel does not match the Fock modes");
  }
  projector_ = kernel_ * kernel_.adjoint();
  const auto d = static_cast<std::size_t>(kernel_.cols());
  offsets_.push_back(0);
  for (int n = 0; n <= space.occupation_cap(); ++n) offsets_.push_back(offsets_.back() + multichoose(d, n));
}

std::size_t PhysicalSubspace::sector_size(int photons) const {
  if (photons < 0 || photons > space_->occupation_cap()) return 0;
  return offsets_[static_cast<std::size_t>(photons) + 1] - offsets_[static_cast<std::size_t>(photons)];
}

int PhysicalSubspace::sector_of(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("physical basis index");
  int n = 0;
  while (offsets_[static_cast<std::size_t>(n) + 1] <= i) ++n;
  return n;
}

std::vector<std::uint32_t> PhysicalSubspace::columns(std::size_t i) const {
  const int n = sector_of(i);
  std::size_t rank = i - offsets_[static_cast<std::size_t>(n)];
  const auto d = static_cast<std::size_t>(kernel_.cols());
  std::vector<std::uint32_t> out;
  std::size_t low = 0;
  for (int p = 0; p < n; ++p) {
    const int rest = n - p - 1;
    for (std::size_t v = low; v < d; ++v) {
      const std::size_t block = multichoose(d - v, rest);
      if (rank < block) {
        out.push_back(static_cast<std::uint32_t>(v));
        low = v;
        break;
      }
      rank -= block;
    }
  }
  return out;
}

StateVector PhysicalSubspace::vector(std::size_t i) const {
  std::vector<Eigen::VectorXcd> factors;
  for (auto c : columns(i)) factors.emplace_back(kernel_.col(c));
  auto psi = create_product(*space_, factors);
  psi.amplitudes /= psi.amplitudes.norm();
  return psi;
}

StateVector PhysicalSubspace::project(const StateVector& psi) const {
  if (psi.amplitudes.size() != static_cast<Eigen::Index>(space_->dimension())) {
    throw std::invalid_argument("state dimension mismatch");
  }
  std::vector<Eigen::VectorXcd> columns(static_cast<std::size_t>(projector_.cols()));
  std::vector<bool> ready(columns.size(), false);
  StateVector out{Eigen::VectorXcd::Zero(psi.amplitudes.size())};
  for (std::size_t i = 0; i < space_->dimension(); ++i) {
    const cd amp = psi.amplitudes(static_cast<Eigen::Index>(i));
    if (amp == 0.0) continue;
    const auto occupied = space_->occupied(i);
    std::vector<const Eigen::VectorXcd*> factors;
    double norm = 1.0;
    for (std::size_t p = 0; p < occupied.size(); ++p) {
      const auto a = occupied[p];
      if (!ready[a]) {
        columns[a] = projector_.col(a);
        ready[a] = true;
      }
      factors.push_back(&columns[a]);
      // 1 / sqrt(n_a!) for the occupation of this mode
      std::size_t run = 1;
      while (p >= run && occupied[p - run] == a) ++run;
      norm *= static_cast<double>(run);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (const auto& [j, value] : sparse_product(*space_, factors)) {
      out.amplitudes(static_cast<Eigen::Index>(j)) += amp * scale * value;
    }
  }
  return out;
}

StateVector create_product(const FockSpace& space, const std::vector<Eigen::VectorXcd>& factors) {
  if (factors.size() > static_cast<std::size_t>(space.occupation_cap())) {
    throw std::invalid_argument("product exceeds the occupation cap");
  }
  std::vector<const Eigen::VectorXcd*> pointers;
  for (const auto& f : factors) {
    if (f.size() != static_cast<Eigen::Index>(space.mode_count())) throw std::invalid_argument("factor size");
    pointers.push_back(&f);
  }
  StateVector out{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()))};
  for (const auto& [j, value] : sparse_product(space, pointers)) out.amplitudes(static_cast<Eigen::Index>(j)) = value;
  return out;
}

PhysicalSubspace kernel_of(const FockSpace& space, const std::vector<ConstraintRow>& rows, double rel_tol) {
  const auto m = space.mode_count();
  DisjointSets sets(m);
  std::vector<bool> constrained(m, false);
  for (const auto& row : rows) {
    if (row.coefficients.size() != static_cast<Eigen::Index>(m)) throw std::invalid_argument("constraint row size");
    std::optional<std::size_t> first;
    for (std::size_t a = 0; a < m; ++a) {
      if (row.coefficients(static_cast<Eigen::Index>(a)) == 0.0) continue;
      constrained[a] = true;
      if (first) sets.join(*first, a);
      else first = a;
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t a = 0; a < m; ++a) blocks[sets.find(a)].push_back(a);
  std::map<std::size_t, std::vector<std::size_t>> block_rows;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t a = 0; a < m; ++a) {
      if (rows[r].coefficients(static_cast<Eigen::Index>(a)) != 0.0) {
        block_rows[sets.find(a)].push_back(r);
        break;
      }
    }
  }

  std::vector<Eigen::VectorXcd> columns;
  for (const auto& [root, members] : blocks) {
    const auto found = block_rows.find(root);
    if (found == block_rows.end()) {
      for (auto a : members) {
        Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m));
        unit(static_cast<Eigen::Index>(a)) = 1.0;
        columns.push_back(std::move(unit));
      }
      continue;
    }
    const auto& members_rows = found->second;
    Eigen::MatrixXcd local(static_cast<Eigen::Index>(members_rows.size()), static_cast<Eigen::Index>(members.size()));
    for (std::size_t r = 0; r < members_rows.size(); ++r)
      for (std::size_t c = 0; c < members.size(); ++c)
        local(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            rows[members_rows[r]].coefficients(static_cast<Eigen::Index>(members[c]));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(local, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double cutoff = rel_tol * (sigma.size() > 0 ? sigma(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
    const Eigen::MatrixXcd& v = svd.matrixV();
    for (Eigen::Index c = rank; c < v.cols(); ++c) {
      Eigen::VectorXcd local_column = v.col(c);
      fix_phase(local_column);
      Eigen::VectorXcd column = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m));
      for (std::size_t j = 0; j < members.size(); ++j)
        column(static_cast<Eigen::Index>(members[j])) = local_column(static_cast<Eigen::Index>(j));
      columns.push_back(std::move(column));
    }
  }
  Eigen::MatrixXcd kernel(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) kernel.col(static_cast<Eigen::Index>(c)) = columns[c];
  return PhysicalSubspace(space, std::move(kernel));
}

PhysicalSubspace physical_subspace(const FockSpace& space, double rel_tol) {
  return kernel_of(space, gauge_constraints(space), rel_tol);
}

StateVector gauge_shift(const FockSpace& space, const StateVector& phi, const StateVector& chi, std::size_t k_index,
                        double tol, double norm_tol) {
  if (!is_physical(space, phi, tol).physical) throw std::invalid_argument("gauge_shift: phi is not physical");
  if (!is_physical(space, chi, tol).physical) throw std::invalid_argument("gauge_shift: chi is not physical");
  if (k_index >= space.modes().size()) throw std::invalid_argument("gauge_shift: unknown wavevector");
  const auto m = static_cast<Eigen::Index>(space.mode_count());
  LinearForm a0{Eigen::VectorXcd::Zero(m), Eigen::VectorXcd::Zero(m)};
  const auto weights = helicity_combination(0);
  for (int s = 0; s < 4; ++s) {
    a0.ann(static_cast<Eigen::Index>(FockSpace::mode_id(k_index, s))) = weights[static_cast<std::size_t>(s)];
  }
  auto shifted = phi + apply(adjoint(a0), space, chi);
  if (std::abs(eta_inner(space, shifted, shifted)) <= norm_tol) {
    throw ZeroNormState("gauge-shifted state has vanishing eta-norm");
  }
  return shifted;
}

}  // namespace zbsim
