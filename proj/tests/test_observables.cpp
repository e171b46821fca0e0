#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "hexgauge/observables.hpp"

using namespace hexgauge;

namespace {

Eigen::MatrixXd dense(const SparseOperator& op) { return Eigen::MatrixXd(op.matrix); }

}  // namespace

TEST(Wilson, Amplitudes) {
  const LatticeConfig cfg{3, 3, Boundary::Periodic, 1.0};
  EXPECT_EQ(wilson1_amplitude({0}, {1, 1}, cfg), -1.0);
  // One up ring neighbor: c = 1.
  const SpinState s = SpinState{}.flipped(cfg.linear_index({1, 2}));
  EXPECT_EQ(wilson1_amplitude(s, {1, 1}, cfg), 0.5);
  // O2 on the vacuum: -(1 + 3)/4 (-1/2)^0.
  EXPECT_EQ(wilson2_amplitude({0}, {1, 1}, cfg), -1.0);
  // Antiparallel pair: prefactor (1 - 3)/4.
  EXPECT_EQ(wilson2_amplitude(SpinState{}.flipped(cfg.linear_index({1, 1})), {1, 1}, cfg), 0.5);
  EXPECT_THROW(wilson2_amplitude({0}, {0, 1}, LatticeConfig{2, 2, Boundary::Closed, 1.0}), std::invalid_argument);
}

TEST(Wilson, ApplyFlipsTheRightSites) {
  const LatticeConfig cfg{3, 3, Boundary::Closed, 1.0};
  const SpinBasis basis(cfg);
  const StateVector o1 = wilson1_apply(basis, {0}, {1, 1});
  EXPECT_EQ(o1.amplitudes[Eigen::Index{1} << cfg.linear_index({1, 1})], std::complex<double>(-1.0, 0.0));
  EXPECT_NEAR(o1.norm(), 1.0, 1e-15);
  const StateVector o2 = wilson2_apply(basis, {0}, {1, 0});
  const auto target = SpinState{}.flipped(cfg.linear_index({1, 0})).flipped(cfg.linear_index({1, 1}));
  EXPECT_EQ(o2.amplitudes[static_cast<Eigen::Index>(target.bits)], std::complex<double>(-1.0, 0.0));
}

TEST(Wilson, OperatorsAgreeWithApply) {
  const LatticeConfig cfg{2, 3, Boundary::Periodic, 1.0};
  const SpinBasis basis(cfg);
  const Eigen::MatrixXd o1 = dense(wilson1_operator(basis, {1, 1}));
  const Eigen::MatrixXd o2 = dense(wilson2_operator(basis, {1, 1}));
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    const Eigen::VectorXcd a = wilson1_apply(basis, basis.state(k), {1, 1}).amplitudes;
    const Eigen::VectorXcd b = wilson2_apply(basis, basis.state(k), {1, 1}).amplitudes;
    EXPECT_LT((a - o1.col(static_cast<Eigen::Index>(k)).cast<std::complex<double>>()).norm(), 1e-15);
    EXPECT_LT((b - o2.col(static_cast<Eigen::Index>(k)).cast<std::complex<double>>()).norm(), 1e-15);
  }
}

TEST(Wilson, HermitianWhereRingsAreDistinct) {
  for (const LatticeConfig cfg : {LatticeConfig{3, 3, Boundary::Periodic, 1.0}, LatticeConfig{2, 3, Boundary::Periodic, 1.0},
                                  LatticeConfig{3, 3, Boundary::Closed, 1.0}}) {
    const SpinBasis basis(cfg);
    const Eigen::MatrixXd o1 = dense(wilson1_operator(basis, {0, 0}));
    const Eigen::MatrixXd o2 = dense(wilson2_operator(basis, {0, 0}));
    EXPECT_LT((o1 - o1.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((o2 - o2.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Wilson, ExpectationOfVacuum) {
  const LatticeConfig cfg{2, 2, Boundary::Closed, 1.0};
  const SpinBasis basis(cfg);
  const StateVector vac = StateVector::basis_state(basis, {0});
  EXPECT_EQ(expectation(wilson1_operator(basis, {0, 0}), vac), std::complex<double>(0.0, 0.0));
  StateVector mix = vac;
  mix.amplitudes[0] = 1.0 / std::sqrt(2.0);
  mix.amplitudes[1] = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(expectation(wilson1_operator(basis, {0, 0}), mix).real(), -1.0, 1e-14);
}

TEST(Wilson, BasisMismatchThrows) {
  const SpinBasis a(LatticeConfig{2, 2, Boundary::Closed, 1.0});
  const SpinBasis b(LatticeConfig{2, 2, Boundary::Periodic, 1.0});
  EXPECT_THROW(StateVector::basis_state(a, {0}).dot(StateVector::basis_state(b, {0})), std::invalid_argument);
}

TEST(Diagonalize, DenseResidualsAndOrder) {
  const LatticeConfig cfg{3, 3, Boundary::Closed, 1.0};
  const Spectrum s = diagonalize(build_closed(cfg));
  EXPECT_EQ(s.eigenvalues.size(), 512u);
  EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  EXPECT_LT(s.max_residual, 1e-10);
}

TEST(Diagonalize, LanczosMatchesDense) {
  const LatticeConfig cfg{3, 3, Boundary::Closed, 1.0};
  const SparseOperator h = build_closed(cfg);
  const Spectrum full = diagonalize(h);
  const Spectrum low = diagonalize(h, {.mode = SpectrumMode::Lowest, .count = 4, .dense_limit = 16});
  ASSERT_EQ(low.eigenvalues.size(), 4u);
  for (std::size_t n = 0; n < 4; ++n) EXPECT_NEAR(low.eigenvalues[n], full.eigenvalues[n], 1e-9);
  EXPECT_LT(low.max_residual, 1e-8);
}

TEST(Diagonalize, FullAboveLimitThrows) {
  const LatticeConfig cfg{2, 3, Boundary::Closed, 1.0};
  EXPECT_THROW(diagonalize(build_closed(cfg), {.dense_limit = 16}), std::length_error);
}

TEST(Evolution, MatchesMatrixExponential) {
  const LatticeConfig cfg{2, 2, Boundary::Periodic, 1.0};
  const SparseOperator h = build_periodic(cfg);
  const StateVector vac = StateVector::basis_state(h.basis, {0});
  const auto traj = evolve(h, vac, 3.0, 6);
  ASSERT_EQ(traj.size(), 7u);
  const Eigen::MatrixXcd hd = dense(h).cast<std::complex<double>>();
  for (int n = 0; n <= 6; ++n) {
    const double t = 3.0 * n / 6;
    const Eigen::MatrixXcd u = (std::complex<double>(0.0, -t) * hd).exp();
    EXPECT_LT((traj[static_cast<std::size_t>(n)].amplitudes - u * vac.amplitudes).norm(), 1e-12);
  }
  EXPECT_EQ(traj[0].amplitudes, vac.amplitudes);
}

TEST(Evolution, RejectsUnnormalizedInput) {
  const LatticeConfig cfg{2, 2, Boundary::Closed, 1.0};
  const SparseOperator h = build_closed(cfg);
  StateVector psi = StateVector::basis_state(h.basis, {0});
  psi.amplitudes *= 2.0;
  EXPECT_THROW(evolve(h, psi, 1.0, 2), std::invalid_argument);
}

TEST(Evolution, ConservesNormAndEnergy) {
  const LatticeConfig cfg{3, 3, Boundary::Closed, 1.0};
  const SparseOperator h = build_closed(cfg);
  const Evolver evolver(h);
  const StateVector vac = StateVector::basis_state(h.basis, {0});
  const double e0 = evolver.energy(vac);
  for (double t : {1.0, 10.0, 50.0}) {
    const StateVector psi = evolver.evolve(vac, t);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    EXPECT_NEAR(evolver.energy(psi), e0, 1e-10);
  }
}

TEST(LevelStatistics, Ratios) {
  const std::vector<double> e{0.0, 1.0, 3.0, 3.0, 3.0, 4.0};
  const auto r = level_spacing_ratios(e);
  // Gaps 1, 2, 0, 0, 1: ratios 0.5, 0, (skipped), 0.
  ASSERT_EQ(r.size(), 3u);
  EXPECT_DOUBLE_EQ(r[0], 0.5);
  EXPECT_DOUBLE_EQ(r[1], 0.0);
  EXPECT_DOUBLE_EQ(r[2], 0.0);
  const auto sectored = level_spacing_ratios(std::vector<std::vector<double>>{{0.0, 1.0, 3.0}, {5.0, 6.0}});
  ASSERT_EQ(sectored.size(), 1u);
  EXPECT_DOUBLE_EQ(sectored[0], 0.5);
}
