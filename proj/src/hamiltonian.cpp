#include "hexgauge/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "hexgauge/parallel.hpp"

namespace hexgauge {

namespace {

using Triplet = Eigen::Triplet<double>;

template <std::size_t K>
int transition_count(SpinState s, const std::array<NeighborSlot, K>& ring, const LatticeConfig& cfg) {
  std::array<bool, K> up{};
  for (std::size_t k = 0; k < K; ++k) up[k] = ring[k] && s.up(cfg.linear_index(*ring[k]));
  int count = 0;
  for (std::size_t k = 0; k < K; ++k) count += up[k] && !up[(k + 1) % K];
  return count;
}

double power_of_minus_half(int c) {
  static constexpr double kTable[] = {1.0, -0.5, 0.25, -0.125, 0.0625};
  return kTable[c];
}

// Column-parallel assembly: column `col` receives H|s> for s = basis.state(col).
template <typename ColumnFn>
RealSparse assemble(const SpinBasis& basis, ColumnFn&& column) {
  const std::size_t dim = basis.dim();
  const unsigned chunks = static_cast<unsigned>(std::min<std::size_t>(thread_count(), dim));
  std::vector<std::vector<Triplet>> parts(std::max(1u, chunks));
  parallel_chunks(dim, chunks, [&](unsigned chunk, std::size_t begin, std::size_t end) {
    auto& out = parts[chunk];
    for (std::size_t col = begin; col < end; ++col) column(col, out);
  });
  std::vector<Triplet> triplets;
  for (auto& p : parts) triplets.insert(triplets.end(), p.begin(), p.end());
  RealSparse m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

void add_flip_terms(const SpinBasis& basis, std::size_t col, double h_x, std::vector<Triplet>& out) {
  const LatticeConfig& cfg = basis.config();
  const SpinState s = basis.state(col);
  for (int p = 0; p < cfg.size(); ++p) {
    const double amp = h_x * magnetic_coefficient(s, cfg.coord(p), cfg);
    const std::size_t row = basis.index_of(s.flipped(p));
    out.emplace_back(static_cast<int>(row), static_cast<int>(col), amp);
  }
}

SparseOperator build_periodic_on(const SpinBasis& basis, const Couplings& k) {
  const LatticeConfig& cfg = basis.config();
  if (!cfg.periodic()) throw std::invalid_argument("build_periodic needs a periodic lattice");
  const std::vector<Bond> bonds = forward_bonds(cfg);
  RealSparse m = assemble(basis, [&](std::size_t col, std::vector<Triplet>& out) {
    const SpinState s = basis.state(col);
    int zz = 0;
    for (const Bond& b : bonds) zz += s.z(b.first) * s.z(b.second);
    out.emplace_back(static_cast<int>(col), static_cast<int>(col), k.J * zz);
    add_flip_terms(basis, col, k.h_x, out);
  });
  return {basis, std::move(m)};
}

}  // namespace

Couplings Couplings::from_lambda(double lambda) {
  const double root3 = std::sqrt(3.0);
  return {27.0 * root3 / 8.0 * lambda, 9.0 * root3 / 8.0 * lambda, 4.0 * root3 / (9.0 * lambda),
          -9.0 * root3 * lambda / 32.0};
}

int c_value(SpinState s, PlaqCoord c, const LatticeConfig& cfg) {
  return transition_count(s, neighbor_chain6(c, cfg), cfg);
}

int c8_value(SpinState s, PlaqCoord c, const LatticeConfig& cfg) {
  return transition_count(s, neighbor_chain8(c, cfg), cfg);
}

double magnetic_coefficient(SpinState s, PlaqCoord c, const LatticeConfig& cfg) {
  return power_of_minus_half(c_value(s, c, cfg));
}

int zz_bond_sum(SpinState s, const LatticeConfig& cfg) {
  int sum = 0;
  for (const Bond& b : forward_bonds(cfg)) sum += s.z(b.first) * s.z(b.second);
  return sum;
}

SparseOperator build_closed(const LatticeConfig& cfg) {
  return build_closed(cfg, Couplings::from_lambda(cfg.lambda));
}

SparseOperator build_closed(const LatticeConfig& cfg, const Couplings& k) {
  if (cfg.periodic()) throw std::invalid_argument("build_closed needs a closed lattice");
  const SpinBasis basis(cfg);
  const std::vector<Bond> bonds = forward_bonds(cfg);
  RealSparse m = assemble(basis, [&](std::size_t col, std::vector<Triplet>& out) {
    const SpinState s = basis.state(col);
    int up_pairs = 0;
    for (const Bond& b : bonds) up_pairs += s.up(b.first) && s.up(b.second);
    const int ups = std::popcount(s.bits);
    const double diag = k.h_plus * ups - k.h_plus_plus * up_pairs;
    if (diag != 0.0) out.emplace_back(static_cast<int>(col), static_cast<int>(col), diag);
    add_flip_terms(basis, col, k.h_x, out);
  });
  return {basis, std::move(m)};
}

SparseOperator build_periodic(const LatticeConfig& cfg) {
  return build_periodic(cfg, Couplings::from_lambda(cfg.lambda));
}

SparseOperator build_periodic(const LatticeConfig& cfg, const Couplings& k) {
  return build_periodic_on(SpinBasis(cfg), k);
}

SparseOperator build_periodic_unreduced(const LatticeConfig& cfg, const Couplings& k) {
  return build_periodic_on(SpinBasis::unreduced(cfg), k);
}

SparseOperator build_hamiltonian(const LatticeConfig& cfg) {
  return build_hamiltonian(cfg, Couplings::from_lambda(cfg.lambda));
}

SparseOperator build_hamiltonian(const LatticeConfig& cfg, const Couplings& k) {
  return cfg.periodic() ? build_periodic(cfg, k) : build_closed(cfg, k);
}

void write_matrix_market(std::ostream& out, const SparseOperator& op) {
  std::size_t nnz = 0;
  for (Eigen::Index r = 0; r < op.matrix.outerSize(); ++r) {
    for (RealSparse::InnerIterator it(op.matrix, r); it; ++it) nnz += it.col() <= r;
  }
  fmt::print(out, "%%MatrixMarket matrix coordinate real symmetric\n");
  fmt::print(out, "{} {} {}\n", op.dim(), op.dim(), nnz);
  for (Eigen::Index r = 0; r < op.matrix.outerSize(); ++r) {
    for (RealSparse::InnerIterator it(op.matrix, r); it; ++it) {
      if (it.col() <= r) fmt::print(out, "{} {} {:.17g}\n", r + 1, it.col() + 1, it.value());
    }
  }
}

void write_matrix_market(const std::string& path, const SparseOperator& op) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_matrix_market(out, op);
}

}  // namespace hexgauge
