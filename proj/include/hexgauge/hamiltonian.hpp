#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Sparse>

#include "hexgauge/lattice.hpp"
#include "hexgauge/spin_basis.hpp"

namespace hexgauge {

/// Coefficients of the spin Hamiltonian in units of 1/a.
struct Couplings {
  double h_plus = 0.0;       // 27 sqrt(3)/8 * lambda
  double h_plus_plus = 0.0;  // 9 sqrt(3)/8 * lambda
  double h_x = 0.0;          // 4 sqrt(3)/(9 lambda)
  double J = 0.0;            // -9 sqrt(3)/32 * lambda

  static Couplings from_lambda(double lambda);
};

using RealSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Real sparse operator together with the basis it acts on.
struct SparseOperator {
  SpinBasis basis;
  RealSparse matrix;

  std::size_t dim() const { return basis.dim(); }
  double entry(std::size_t row, std::size_t col) const { return matrix.coeff(row, col); }
};

/// Number of K in 0..5 whose ring neighbor K is up while K+1 (mod 6) is down.
/// Out-of-lattice neighbors read as down.
int c_value(SpinState s, PlaqCoord c, const LatticeConfig& cfg);

/// Same transition count over the eight-plaquette ring of the pair (c, c + y).
int c8_value(SpinState s, PlaqCoord c, const LatticeConfig& cfg);

/// (-1/2)^c_value: amplitude of the plaquette flip at c.
double magnetic_coefficient(SpinState s, PlaqCoord c, const LatticeConfig& cfg);

/// sum over forward bonds of z_p z_q, as an exact integer.
int zz_bond_sum(SpinState s, const LatticeConfig& cfg);

/// Confining-boundary Hamiltonian over all 2^N words:
/// h+ sum Pi+ - h++ sum Pi+ (Pi+ + Pi+ + Pi+) + h_x sum (-1/2)^c sigma^x.
SparseOperator build_closed(const LatticeConfig& cfg);
SparseOperator build_closed(const LatticeConfig& cfg, const Couplings& k);

/// Periodic Hamiltonian J H_zz + h_x H_x on the flip-quotient basis.
SparseOperator build_periodic(const LatticeConfig& cfg);
SparseOperator build_periodic(const LatticeConfig& cfg, const Couplings& k);

/// Periodic Hamiltonian on all 2^N words, without the flip identification.
SparseOperator build_periodic_unreduced(const LatticeConfig& cfg, const Couplings& k);

/// build_closed or build_periodic according to cfg.bc.
SparseOperator build_hamiltonian(const LatticeConfig& cfg);
SparseOperator build_hamiltonian(const LatticeConfig& cfg, const Couplings& k);

/// MatrixMarket coordinate real symmetric, lower triangle, 1-based indices.
void write_matrix_market(std::ostream& out, const SparseOperator& op);
void write_matrix_market(const std::string& path, const SparseOperator& op);

}  // namespace hexgauge
