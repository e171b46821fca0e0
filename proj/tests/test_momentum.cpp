#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hexgauge/momentum.hpp"

using namespace hexgauge;

namespace {

Eigen::MatrixXcd as_complex(const SparseOperator& op) { return Eigen::MatrixXd(op.matrix).cast<std::complex<double>>(); }

class MomentumTest : public ::testing::TestWithParam<std::pair<int, int>> {
 protected:
  LatticeConfig cfg() const { return {GetParam().first, GetParam().second, Boundary::Periodic, 0.7}; }
};

}  // namespace

TEST_P(MomentumTest, BasisIsOrthonormal) {
  const auto c = cfg();
  const OrbitTable orbits(c);
  for (int qy = 0; qy < c.ny; ++qy) {
    for (int qx = 0; qx < c.nx; ++qx) {
      const auto sector = build_sector(orbits, qx, qy);
      if (sector.dim() == 0) continue;
      const Eigen::MatrixXcd v = momentum_basis(sector, orbits);
      const auto n = static_cast<Eigen::Index>(sector.dim());
      EXPECT_LT((v.adjoint() * v - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST_P(MomentumTest, BlocksEqualProjectedHamiltonian) {
  const auto c = cfg();
  const OrbitTable orbits(c);
  const Couplings k = Couplings::from_lambda(c.lambda);
  const Eigen::MatrixXcd h = as_complex(build_periodic(c, k));
  for (int qy = 0; qy < c.ny; ++qy) {
    for (int qx = 0; qx < c.nx; ++qx) {
      const auto sector = build_sector(orbits, qx, qy);
      if (sector.dim() == 0) continue;
      const Eigen::MatrixXcd v = momentum_basis(sector, orbits);
      const Eigen::MatrixXcd block = sector_hamiltonian(sector, orbits, k).dense();
      EXPECT_LT((v.adjoint() * h * v - block).cwiseAbs().maxCoeff(), 1e-12) << qx << "," << qy;
      EXPECT_LT((block - block.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
      // H maps the sector into itself.
      const Eigen::MatrixXcd hv = h * v;
      EXPECT_LT((hv - v * (v.adjoint() * hv)).norm(), 1e-10);
    }
  }
}

TEST_P(MomentumTest, WilsonBlocksEqualConjugatedOperators) {
  const auto c = cfg();
  const OrbitTable orbits(c);
  const SpinBasis basis(c);
  const Eigen::MatrixXcd o1 = as_complex(wilson1_operator(basis, {0, 0}));
  const Eigen::MatrixXcd o2 = as_complex(wilson2_operator(basis, {0, 0}));
  std::vector<MomentumSector> sectors;
  for (int q = 0; q < c.size(); ++q) sectors.push_back(build_sector(orbits, q % c.nx, q / c.nx));
  for (const auto& ket : sectors) {
    if (ket.dim() == 0) continue;
    const Eigen::MatrixXcd vk = momentum_basis(ket, orbits);
    for (const auto& bra : sectors) {
      if (bra.dim() == 0) continue;
      const Eigen::MatrixXcd vb = momentum_basis(bra, orbits);
      EXPECT_LT((vb.adjoint() * o1 * vk - wilson1_block(ket, bra, orbits)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((vb.adjoint() * o2 * vk - wilson2_block(ket, bra, orbits)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST_P(MomentumTest, SectorSpectraCoverFullSpectrum) {
  const auto c = cfg();
  const Couplings k = Couplings::from_lambda(c.lambda);
  std::vector<double> merged;
  for (const auto& s : sector_spectra(c, k)) merged.insert(merged.end(), s.eigenvalues.begin(), s.eigenvalues.end());
  std::sort(merged.begin(), merged.end());
  const auto full = diagonalize(build_periodic(c, k)).eigenvalues;
  ASSERT_EQ(merged.size(), full.size());
  for (std::size_t n = 0; n < full.size(); ++n) EXPECT_NEAR(merged[n], full[n], 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Lattices, MomentumTest,
                         ::testing::Values(std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{4, 2}),
                         [](const auto& info) {
                           return std::to_string(info.param.first) + "x" + std::to_string(info.param.second);
                         });

TEST(RingBracket, EqualsMinusHalfPowerOfC) {
  const LatticeConfig cfg{3, 3, Boundary::Periodic, 1.0};
  for (std::uint64_t bits = 0; bits < 512; ++bits) {
    const auto b = ring_bracket({bits}, neighbor_chain6({1, 1}, cfg), cfg);
    EXPECT_NEAR(std::abs(b - magnetic_coefficient({bits}, {1, 1}, cfg)), 0.0, 1e-14);
  }
}

TEST(Momentum, ClosedLatticeRejected) {
  const LatticeConfig cfg{2, 2, Boundary::Closed, 1.0};
  EXPECT_THROW(sector_spectra(cfg, Couplings::from_lambda(1.0)), std::invalid_argument);
}

TEST(Momentum, LowestModeGroundStateOnFourByFour) {
  const LatticeConfig cfg{4, 4, Boundary::Periodic, 1.0};
  const Couplings k = Couplings::from_lambda(1.0);
  const DiagonalizeOptions lowest{.mode = SpectrumMode::Lowest, .count = 1, .vectors = false};
  double ground = INFINITY;
  for (const auto& s : sector_spectra(cfg, k, lowest)) ground = std::min(ground, s.eigenvalues.front());
  EXPECT_NEAR(ground, diagonalize(build_periodic(cfg, k), lowest).eigenvalues.front(), 1e-9);
}
