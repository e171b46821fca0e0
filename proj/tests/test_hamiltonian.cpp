#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "hexgauge/hamiltonian.hpp"
#include "hexgauge/observables.hpp"

using namespace hexgauge;

namespace {

const double kRoot3 = std::sqrt(3.0);

// Spin at raw position (i, j): outside a closed lattice reads as down.
int z_at(SpinState s, int i, int j, const LatticeConfig& cfg) {
  if (cfg.periodic()) {
    i = ((i % cfg.nx) + cfg.nx) % cfg.nx;
    j = ((j % cfg.ny) + cfg.ny) % cfg.ny;
  } else if (!cfg.contains(i, j)) {
    return -1;
  }
  return s.z(i + cfg.nx * j);
}

int reference_c(SpinState s, int i, int j, const LatticeConfig& cfg) {
  static constexpr int di[6] = {0, 1, 1, 0, -1, -1};
  static constexpr int dj[6] = {1, 0, -1, -1, 0, 1};
  int c = 0;
  for (int k = 0; k < 6; ++k) {
    const int a = z_at(s, i + di[k], j + dj[k], cfg);
    const int b = z_at(s, i + di[(k + 1) % 6], j + dj[(k + 1) % 6], cfg);
    c += a == 1 && b == -1;
  }
  return c;
}

Eigen::MatrixXd reference_hamiltonian(const LatticeConfig& cfg, const Couplings& k) {
  const SpinBasis basis(cfg);
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const SpinState s = basis.state(static_cast<std::size_t>(col));
    double diag = 0.0;
    for (int j = 0; j < cfg.ny; ++j) {
      for (int i = 0; i < cfg.nx; ++i) {
        const int z = s.z(i + cfg.nx * j);
        const int up_x = z_at(s, i + 1, j, cfg), up_y = z_at(s, i, j + 1, cfg), up_d = z_at(s, i + 1, j - 1, cfg);
        if (cfg.periodic()) {
          diag += k.J * z * (up_x + up_y + up_d);
        } else {
          const double n = (1 + z) / 2;
          diag += k.h_plus * n;
          for (int zn : {up_x, up_y, up_d}) diag -= k.h_plus_plus * n * ((1 + zn) / 2);
        }
        const double amp = k.h_x * std::pow(-0.5, reference_c(s, i, j, cfg));
        h(static_cast<Eigen::Index>(basis.index_of(s.flipped(i + cfg.nx * j))), col) += amp;
      }
    }
    h(col, col) += diag;
  }
  return h;
}

}  // namespace

TEST(Couplings, Values) {
  const Couplings k = Couplings::from_lambda(2.0);
  EXPECT_NEAR(k.h_plus, 27.0 * kRoot3 / 8.0 * 2.0, 1e-14);
  EXPECT_NEAR(k.h_plus_plus, 9.0 * kRoot3 / 8.0 * 2.0, 1e-14);
  EXPECT_NEAR(k.h_x, 4.0 * kRoot3 / 18.0, 1e-14);
  EXPECT_NEAR(k.J, -9.0 * kRoot3 * 2.0 / 32.0, 1e-14);
}

TEST(Magnetic, CValueMatchesReference) {
  for (const LatticeConfig cfg : {LatticeConfig{3, 3, Boundary::Closed, 1.0}, LatticeConfig{3, 3, Boundary::Periodic, 1.0},
                                  LatticeConfig{2, 2, Boundary::Periodic, 1.0}}) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cfg.size()); ++bits) {
      for (int p = 0; p < cfg.size(); ++p) {
        const PlaqCoord c = cfg.coord(p);
        const int ref = reference_c({bits}, c.i, c.j, cfg);
        ASSERT_EQ(c_value({bits}, c, cfg), ref);
        ASSERT_EQ(magnetic_coefficient({bits}, c, cfg), std::pow(-0.5, ref));
      }
    }
  }
}

TEST(Magnetic, C8OnAllDownIsZero) {
  const LatticeConfig cfg{3, 3, Boundary::Periodic, 1.0};
  EXPECT_EQ(c8_value({0}, {1, 1}, cfg), 0);
  // One up neighbor in the ring gives exactly one up->down transition.
  EXPECT_EQ(c8_value(SpinState{}.flipped(cfg.linear_index({2, 1})), {1, 0}, cfg), 1);
}

TEST(ZZ, BondSum) {
  const LatticeConfig cfg{3, 3, Boundary::Periodic, 1.0};
  EXPECT_EQ(zz_bond_sum({0}, cfg), 27);
  EXPECT_EQ(zz_bond_sum(SpinState{}.flipped(4), cfg), 27 - 12);
}

TEST(Hamiltonian, MatchesReference) {
  const std::vector<LatticeConfig> configs{{1, 1, Boundary::Closed, 1.0},  {2, 1, Boundary::Closed, 0.5},
                                           {2, 2, Boundary::Closed, 2.0},  {3, 3, Boundary::Closed, 1.0},
                                           {2, 2, Boundary::Periodic, 1.0}, {2, 3, Boundary::Periodic, 0.5},
                                           {3, 3, Boundary::Periodic, 2.0}};
  for (const auto& cfg : configs) {
    const Couplings k = Couplings::from_lambda(cfg.lambda);
    const SparseOperator h = build_hamiltonian(cfg);
    const Eigen::MatrixXd dense(h.matrix);
    EXPECT_LT((dense - reference_hamiltonian(cfg, k)).cwiseAbs().maxCoeff(), 1e-13)
        << cfg.nx << "x" << cfg.ny << " " << to_string(cfg.bc);
    EXPECT_LT((dense - dense.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Hamiltonian, OneByOneAnalytic) {
  const LatticeConfig cfg{1, 1, Boundary::Closed, 1.0};
  const Couplings k = Couplings::from_lambda(1.0);
  const Spectrum s = diagonalize(build_closed(cfg));
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  const double mid = k.h_plus / 2.0;
  const double gap = std::sqrt(mid * mid + k.h_x * k.h_x);
  EXPECT_NEAR(s.eigenvalues[0], mid - gap, 1e-12);
  EXPECT_NEAR(s.eigenvalues[1], mid + gap, 1e-12);
}

TEST(Hamiltonian, UnreducedContainsQuotient) {
  // Every quotient eigenvalue is also an eigenvalue of the unreduced periodic model.
  const LatticeConfig cfg{2, 3, Boundary::Periodic, 1.0};
  const Couplings k = Couplings::from_lambda(1.0);
  const auto reduced = diagonalize(build_periodic(cfg)).eigenvalues;
  const auto full = diagonalize(build_periodic_unreduced(cfg, k)).eigenvalues;
  ASSERT_EQ(full.size(), 2 * reduced.size());
  for (double e : reduced) {
    const double nearest = *std::min_element(full.begin(), full.end(),
                                             [&](double a, double b) { return std::abs(a - e) < std::abs(b - e); });
    EXPECT_NEAR(nearest, e, 1e-10);
  }
}

TEST(Hamiltonian, ExcitationEnergies) {
  const LatticeConfig cfg{3, 3, Boundary::Periodic, 1.3};
  const SparseOperator h = build_periodic(cfg);
  const double vac = h.entry(0, 0);
  const SpinState one = SpinState{}.flipped(4);
  const SpinState two = one.flipped(cfg.linear_index({1, 2}));
  EXPECT_NEAR(h.entry(h.basis.index_of(one), h.basis.index_of(one)) - vac, 27.0 * kRoot3 / 8.0 * 1.3, 1e-12);
  EXPECT_NEAR(h.entry(h.basis.index_of(two), h.basis.index_of(two)) - vac, 45.0 * kRoot3 / 8.0 * 1.3, 1e-12);
}

TEST(Hamiltonian, MatrixMarket) {
  const LatticeConfig cfg{2, 2, Boundary::Periodic, 1.0};
  const SparseOperator h = build_periodic(cfg);
  std::ostringstream out;
  write_matrix_market(out, h);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "%%MatrixMarket matrix coordinate real symmetric");
  std::string line;
  do {
    std::getline(in, line);
  } while (!line.empty() && line[0] == '%');
  std::istringstream sizes(line);
  long rows = 0, cols = 0, nnz = 0;
  sizes >> rows >> cols >> nnz;
  EXPECT_EQ(rows, 8);
  EXPECT_EQ(cols, 8);
  Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(8, 8);
  for (long n = 0; n < nnz; ++n) {
    long r = 0, c = 0;
    double v = 0.0;
    in >> r >> c >> v;
    ASSERT_GE(r, c);
    rebuilt(r - 1, c - 1) = v;
    rebuilt(c - 1, r - 1) = v;
  }
  EXPECT_LT((rebuilt - Eigen::MatrixXd(h.matrix)).cwiseAbs().maxCoeff(), 1e-15);
}
