#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hexgauge/hamiltonian.hpp"
#include "hexgauge/observables.hpp"
#include "hexgauge/spin_basis.hpp"

namespace hexgauge {

/// Hermitian operator restricted to one momentum sector, indexed by the
/// sector's representatives.
struct SectorBlock {
  int qx = 0;
  int qy = 0;
  ComplexSparse matrix;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
};

/// Product over a closed ring of [(1/2 - i/(2 sqrt 2)) z_K z_{K+1} + 1/2 + i/(2 sqrt 2)],
/// out-of-lattice slots reading z = -1.
template <std::size_t K>
std::complex<double> ring_bracket(SpinState s, const std::array<NeighborSlot, K>& ring, const LatticeConfig& cfg) {
  const double r = 0.5 / std::sqrt(2.0);
  const std::complex<double> with_zz{0.5, -r};
  const std::complex<double> constant{0.5, r};
  std::array<int, K> z{};
  for (std::size_t k = 0; k < K; ++k) z[k] = ring[k] ? s.z(cfg.linear_index(*ring[k])) : -1;
  std::complex<double> product{1.0, 0.0};
  for (std::size_t k = 0; k < K; ++k) product *= with_zz * double(z[k] * z[(k + 1) % K]) + constant;
  return product;
}

/// H_zz on the representatives (diagonal).
SectorBlock hzz_block(const MomentumSector& sector, const LatticeConfig& cfg);

/// H_x between momentum states of one sector.
SectorBlock hx_block(const MomentumSector& sector, const OrbitTable& orbits);

/// J H_zz + h_x H_x on one sector.
SectorBlock sector_hamiltonian(const MomentumSector& sector, const OrbitTable& orbits, const Couplings& k);

/// <b(k')|O1|a(k)> for O1 at (0,0); rows follow `bra`, columns follow `ket`.
Eigen::MatrixXcd wilson1_block(const MomentumSector& ket, const MomentumSector& bra, const OrbitTable& orbits);

/// <b(k')|O2|a(k)> for O2 on (0,0), (0,1).
Eigen::MatrixXcd wilson2_block(const MomentumSector& ket, const MomentumSector& bra, const OrbitTable& orbits);

/// Columns are the momentum states |a(k)> expanded in the flip-quotient basis.
Eigen::MatrixXcd momentum_basis(const MomentumSector& sector, const OrbitTable& orbits);

struct SectorSpectrum {
  int qx = 0;
  int qy = 0;
  std::vector<double> eigenvalues;
};

/// Spectra of every momentum sector, (qx, qy) in row-major order. Sectors are
/// diagonalized in parallel.
std::vector<SectorSpectrum> sector_spectra(const LatticeConfig& cfg, const Couplings& k,
                                           const DiagonalizeOptions& options = {.vectors = false});

}  // namespace hexgauge
