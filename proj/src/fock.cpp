#include "zbsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace zbsim {

namespace {

// Visit every nondecreasing sequence of length n over [0, m).
template <class F>
void for_each_multiset(std::size_t m, int n, std::vector<std::uint32_t>& scratch, int depth,
                       std::uint32_t lowest, F&& visit) {
  if (depth == n) {
    visit(scratch);
    return;
  }
  for (auto a = lowest; a < m; ++a) {
    scratch[depth] = a;
    for_each_multiset(m, n, scratch, depth + 1, a, visit);
  }
}

}  // namespace

FockSpace::FockSpace(const ModeSet& modes, int occupation_cap)
    : modes_(modes), mode_count_(4 * modes.size()), cap_(occupation_cap) {
  if (occupation_cap < 1 || occupation_cap > 6) {
    throw std::invalid_argument("occupation cap must be in 1..6");
  }
  const double digits = std::log2(static_cast<double>(mode_count_ + 1)) * occupation_cap;
  if (digits >= 63.0) throw std::invalid_argument("Fock basis too large to index");

  std::vector<std::uint32_t> scratch(static_cast<std::size_t>(cap_));
  for (int n = 0; n <= cap_; ++n) {
    for_each_multiset(mode_count_, n, scratch, 0, 0, [&](const std::vector<std::uint32_t>& seq) {
      const std::size_t index = count_.size();
      for (int j = 0; j < cap_; ++j) modes_flat_.push_back(j < n ? seq[j] : 0u);
      count_.push_back(static_cast<std::uint8_t>(n));
      index_.emplace(key({seq.data(), static_cast<std::size_t>(n)}), index);
    });
  }
  metric_.resize(static_cast<Eigen::Index>(count_.size()));
  for (std::size_t i = 0; i < count_.size(); ++i) {
    int scalars = 0;
    for (auto mode : occupied(i))
      if (s_of(mode) == 0) ++scalars;
    metric_(static_cast<Eigen::Index>(i)) = (scalars % 2 == 0) ? 1.0 : -1.0;
  }
}

std::uint64_t FockSpace::key(std::span<const std::uint32_t> sorted_modes) const {
  std::uint64_t value = 0;
  const std::uint64_t base = mode_count_ + 1;
  for (auto mode : sorted_modes) value = value * base + (mode + 1);
  return value;
}

std::size_t FockSpace::occupation(std::size_t i, std::size_t mode) const {
  const auto modes = occupied(i);
  return static_cast<std::size_t>(std::count(modes.begin(), modes.end(), mode));
}

std::optional<std::size_t> FockSpace::index_of(std::span<const std::uint32_t> sorted_modes) const {
  if (sorted_modes.size() > static_cast<std::size_t>(cap_)) return std::nullopt;
  auto it = index_.find(key(sorted_modes));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::pair<std::size_t, double>> FockSpace::annihilate(std::size_t mode,
                                                                   std::size_t i) const {
  const auto modes = occupied(i);
  auto first = std::find(modes.begin(), modes.end(), mode);
  if (first == modes.end()) return std::nullopt;
  const auto n = static_cast<std::size_t>(std::count(first, modes.end(), mode));
  std::array<std::uint32_t, 8> next{};
  std::size_t len = 0;
  bool removed = false;
  for (auto m : modes) {
    if (!removed && m == mode) {
      removed = true;
      continue;
    }
    next[len++] = m;
  }
  const auto j = index_of({next.data(), len});
  return std::make_pair(*j, std::sqrt(static_cast<double>(n)));
}

std::optional<std::pair<std::size_t, double>> FockSpace::create_plain(std::size_t mode,
                                                                     std::size_t i) const {
  const auto modes = occupied(i);
  if (modes.size() >= static_cast<std::size_t>(cap_)) return std::nullopt;
  std::array<std::uint32_t, 8> next{};
  std::size_t len = 0;
  bool inserted = false;
  std::size_t n = 0;
  for (auto m : modes) {
    if (m == mode) ++n;
    if (!inserted && m > mode) {
      next[len++] = static_cast<std::uint32_t>(mode);
      inserted = true;
    }
    next[len++] = m;
  }
  if (!inserted) next[len++] = static_cast<std::uint32_t>(mode);
  const auto j = index_of({next.data(), len});
  return std::make_pair(*j, std::sqrt(static_cast<double>(n + 1)));
}

std::optional<std::pair<std::size_t, double>> FockSpace::create(std::size_t mode,
                                                               std::size_t i) const {
  auto result = create_plain(mode, i);
  if (result && s_of(mode) == 0) result->second = -result->second;
  return result;
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  return {SparseMatrix(a.matrix + b.matrix)};
}
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  return {SparseMatrix(a.matrix - b.matrix)};
}
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.matrix.cols() != b.matrix.rows()) throw std::invalid_argument("operator dimension mismatch");
  return {SparseMatrix(a.matrix * b.matrix)};
}
OperatorMatrix operator*(cd scale, const OperatorMatrix& a) { return {SparseMatrix(scale * a.matrix)}; }
StateVector operator*(const OperatorMatrix& a, const StateVector& psi) {
  if (a.matrix.cols() != psi.amplitudes.size()) throw std::invalid_argument("state dimension mismatch");
  return {a.matrix * psi.amplitudes};
}
StateVector operator+(const StateVector& a, const StateVector& b) {
  if (a.amplitudes.size() != b.amplitudes.size()) throw std::invalid_argument("state dimension mismatch");
  return {a.amplitudes + b.amplitudes};
}
StateVector operator*(cd scale, const StateVector& psi) { return {scale * psi.amplitudes}; }

OperatorMatrix identity(const FockSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dimension());
  SparseMatrix id(n, n);
  id.setIdentity();
  return {id};
}

StateVector vacuum(const FockSpace& space) {
  StateVector psi{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()))};
  psi.amplitudes(0) = 1.0;
  return psi;
}

StateVector basis_state(const FockSpace& space, std::vector<std::uint32_t> modes) {
  std::sort(modes.begin(), modes.end());
  const auto index = space.index_of(modes);
  if (!index) throw std::invalid_argument("occupation not in the truncated basis");
  StateVector psi{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()))};
  psi.amplitudes(static_cast<Eigen::Index>(*index)) = 1.0;
  return psi;
}

OperatorMatrix ladder_b(const FockSpace& space, std::size_t k_index, int s) {
  if (k_index >= space.modes().size() || s < 0 || s > 3) {
    throw std::invalid_argument("unknown mode (k index " + std::to_string(k_index) + ", s " +
                                std::to_string(s) + ")");
  }
  const auto mode = FockSpace::mode_id(k_index, s);
  const auto n = static_cast<Eigen::Index>(space.dimension());
  std::vector<Eigen::Triplet<cd>> entries;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    if (auto hit = space.annihilate(mode, i)) {
      entries.emplace_back(static_cast<Eigen::Index>(hit->first), static_cast<Eigen::Index>(i),
                           hit->second);
    }
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return {m};
}

OperatorMatrix dagger(const FockSpace& space, const OperatorMatrix& x) {
  const auto& sign = space.metric_diagonal();
  SparseMatrix adj = x.matrix.adjoint();
  for (Eigen::Index r = 0; r < adj.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(adj, r); it; ++it) {
      it.valueRef() *= sign(it.row()) * sign(it.col());
    }
  }
  return {adj};
}

OperatorMatrix commutator(const OperatorMatrix& x, const OperatorMatrix& y) {
  if (x.matrix.rows() != y.matrix.rows() || x.matrix.cols() != y.matrix.cols()) {
    throw std::invalid_argument("commutator of operators on different spaces");
  }
  return {SparseMatrix(x.matrix * y.matrix - y.matrix * x.matrix)};
}

std::array<cd, 4> helicity_combination(int helicity) {
  const cd i(0.0, 1.0);
  const double r = std::sqrt(0.5);
  switch (helicity) {
    case 1:
      return {0.0, i, 0.0, 0.0};
    case -1:
      return {0.0, 0.0, i, 0.0};
    case 0:
      return {-i * r, 0.0, 0.0, i * r};
    default:
      throw std::invalid_argument("helicity must be +1, -1 or 0");
  }
}

OperatorMatrix combine_a(const FockSpace& space, std::size_t k_index, int helicity) {
  const auto weights = helicity_combination(helicity);
  const auto n = static_cast<Eigen::Index>(space.dimension());
  OperatorMatrix out{SparseMatrix(n, n)};
  for (int s = 0; s < 4; ++s) {
    if (weights[static_cast<std::size_t>(s)] != 0.0) {
      out = out + weights[static_cast<std::size_t>(s)] * ladder_b(space, k_index, s);
    }
  }
  return out;
}

cd eta_inner(const FockSpace& space, const StateVector& phi, const StateVector& psi) {
  if (phi.amplitudes.size() != psi.amplitudes.size() ||
      phi.amplitudes.size() != static_cast<Eigen::Index>(space.dimension())) {
    throw std::invalid_argument("state dimension mismatch");
  }
  return phi.amplitudes.dot(space.metric_diagonal().cast<cd>().cwiseProduct(psi.amplitudes));
}

cd expectation(const FockSpace& space, const OperatorMatrix& x, const StateVector& psi, double norm_tol) {
  const cd norm = eta_inner(space, psi, psi);
  if (std::abs(norm) <= norm_tol) {
    throw ZeroNormState("state has vanishing eta-norm; expectation undefined");
  }
  return eta_inner(space, psi, x * psi) / norm;
}

double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b) {
  const SparseMatrix diff = a.matrix - b.matrix;
  double worst = 0.0;
  for (Eigen::Index r = 0; r < diff.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(diff, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

double max_abs_interior(const FockSpace& space, const OperatorMatrix& x) {
  double worst = 0.0;
  const int cap = space.occupation_cap();
  for (Eigen::Index r = 0; r < x.matrix.outerSize(); ++r) {
    if (space.photon_number(static_cast<std::size_t>(r)) >= cap) continue;
    for (SparseMatrix::InnerIterator it(x.matrix, r); it; ++it) {
      if (space.photon_number(static_cast<std::size_t>(it.col())) >= cap) continue;
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

}  // namespace zbsim
