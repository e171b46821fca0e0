#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <map>
#include <set>

#include <gsl/gsl_sf_coupling.h>

#include "hexgauge/oracle.hpp"

using namespace hexgauge;
using namespace hexgauge::oracle;

namespace {

LatticeConfig make(int nx, int ny, Boundary bc, double lambda = 1.0) { return {nx, ny, bc, lambda}; }

}  // namespace

TEST(SixJ, MatchesGsl) {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        for (int d = 0; d <= 4; ++d)
          for (int e = 0; e <= 4; ++e)
            for (int f = 0; f <= 4; ++f) {
              ASSERT_NEAR(wigner_6j_twice(a, b, c, d, e, f), gsl_sf_coupling_6j(a, b, c, d, e, f), 1e-13)
                  << a << b << c << d << e << f;
            }
}

TEST(SixJ, KnownValues) {
  EXPECT_NEAR(wigner_6j(0.5, 0.5, 0, 0.5, 0.5, 0), -0.5, 1e-15);
  EXPECT_NEAR(wigner_6j(1, 1, 1, 1, 1, 1), 1.0 / 6.0, 1e-15);
  EXPECT_EQ(wigner_6j(1, 1, 3, 1, 1, 1), 0.0);
  EXPECT_THROW(wigner_6j(0.3, 1, 1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(wigner_6j(-1, 1, 1, 1, 1, 1), std::invalid_argument);
}

TEST(Vertex, Classification) {
  EXPECT_EQ(classify_vertex(0, 0, 0), VertexState::Zero);
  EXPECT_EQ(classify_vertex(1, 0, 1), VertexState::A);
  EXPECT_EQ(classify_vertex(1, 1, 0), VertexState::B);
  EXPECT_EQ(classify_vertex(0, 1, 1), VertexState::C);
  EXPECT_FALSE(classify_vertex(1, 1, 1).has_value());
  EXPECT_FALSE(classify_vertex(1, 0, 0).has_value());
}

TEST(Vertex, ElementsFromSixJMatchTable) {
  const VertexState all[] = {VertexState::Zero, VertexState::A, VertexState::B, VertexState::C};
  for (VertexState bra : all) {
    for (VertexState ket : all) {
      EXPECT_NEAR(std::abs(vertex_element(bra, ket) - vertex_element_table(bra, ket)), 0.0, 1e-15);
    }
  }
  EXPECT_EQ(vertex_element_table(VertexState::A, VertexState::Zero), std::complex<double>(0, -1));
  EXPECT_EQ(vertex_element_table(VertexState::C, VertexState::B), std::complex<double>(0, 0.5));
}

TEST(Graph, PeriodicCounts) {
  for (auto [nx, ny] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
    const auto g = build_honeycomb(make(nx, ny, Boundary::Periodic));
    const int n = nx * ny;
    EXPECT_EQ(g.links, 3 * n);
    EXPECT_EQ(static_cast<int>(g.vertices.size()), 2 * n);
    std::map<int, int> degree;
    for (const auto& v : g.vertices)
      for (int l : v) ++degree[l];
    for (int l = 0; l < g.links; ++l) EXPECT_EQ(degree[l], 2);
    // Every link borders exactly two plaquettes.
    std::vector<int> border(static_cast<std::size_t>(g.links), 0);
    for (std::uint64_t m : g.plaquette_masks)
      for (int l = 0; l < g.links; ++l) border[static_cast<std::size_t>(l)] += (m >> l) & 1u;
    for (int b : border) EXPECT_EQ(b, 2);
  }
}

TEST(Graph, ClosedSinglePlaquette) {
  const auto g = build_honeycomb(make(1, 1, Boundary::Closed));
  EXPECT_EQ(g.links, 6);
  EXPECT_EQ(g.vertices.size(), 6u);
  for (const auto& c : g.plaquettes[0]) EXPECT_EQ(c.x, -1);
  EXPECT_EQ(g.plaquette_masks[0], 0x3Fu);
}

TEST(Graph, BoundaryWalkIsConsistent) {
  const auto g = build_honeycomb(make(3, 3, Boundary::Closed));
  for (const auto& p : g.plaquettes) {
    for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(p[k].b, p[(k + 1) % 6].a);
  }
}

TEST(Gauss, CountsAndReachability) {
  for (auto [nx, ny] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
    const auto cfg = make(nx, ny, Boundary::Closed);
    const auto e = enumerate_gauge_states(cfg);
    EXPECT_EQ(e.gauss.size(), std::size_t{1} << cfg.size());
    EXPECT_EQ(e.reachable.size(), std::size_t{1} << cfg.size());
  }
  for (auto [nx, ny] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const auto cfg = make(nx, ny, Boundary::Periodic);
    const auto e = enumerate_gauge_states(cfg);
    // Two extra winding fluxes are Gauss-allowed but unreachable by plaquette moves.
    EXPECT_EQ(e.gauss.size(), std::size_t{1} << (cfg.size() + 1));
    EXPECT_EQ(e.reachable.size(), std::size_t{1} << (cfg.size() - 1));
    const auto graph = build_honeycomb(cfg);
    for (const auto& g : e.gauss) EXPECT_TRUE(satisfies_gauss(graph, g));
  }
}

TEST(Gauss, ToggleWordsAreDistinctPhysicalStates) {
  const auto cfg = make(2, 3, Boundary::Periodic);
  const auto e = enumerate_gauge_states(cfg);
  std::set<std::uint64_t> words;
  for (SpinState s : e.toggle_words) words.insert(physical(s, cfg).bits);
  EXPECT_EQ(words.size(), e.reachable.size());
}

TEST(Plaquette, ElementIsMinusHalfPowerOfExternalCount) {
  // With j = 1/2 externals counted, each B->C / C->B pair contributes -1/2 overall.
  const auto cfg = make(3, 3, Boundary::Periodic);
  const auto graph = build_honeycomb(cfg);
  const auto e = enumerate_gauge_states(cfg);
  for (const auto& g : e.reachable) {
    for (int p = 0; p < cfg.size(); ++p) {
      const auto el = plaquette_element(graph, p, g);
      EXPECT_NEAR(el.imag(), 0.0, 1e-14);
      const double mag = std::abs(el.real());
      const double c = -std::log2(mag);
      EXPECT_NEAR(c, std::round(c), 1e-12);
      EXPECT_NEAR(el.real(), -std::pow(-0.5, std::round(c)), 1e-14);
    }
  }
}

TEST(KS, ElectricEnergies) {
  const double root3 = std::sqrt(3.0);
  const auto cfg = make(3, 3, Boundary::Periodic, 1.7);
  const auto h = ks_hamiltonian(cfg);
  const Eigen::MatrixXd d(h.matrix);
  std::map<std::uint64_t, Eigen::Index> index;
  for (std::size_t k = 0; k < h.states.size(); ++k) index[h.states[k].half_links] = static_cast<Eigen::Index>(k);
  const std::uint64_t p0 = h.graph.plaquette_masks[0];
  const std::uint64_t p1 = h.graph.plaquette_masks[1];
  const double vac = d(index.at(0), index.at(0));
  EXPECT_NEAR(d(index.at(p0), index.at(p0)) - vac, 27.0 * root3 / 8.0 * 1.7, 1e-12);
  EXPECT_NEAR(d(index.at(p0 ^ p1), index.at(p0 ^ p1)) - vac, 45.0 * root3 / 8.0 * 1.7, 1e-12);
  EXPECT_LT(h.max_imaginary, 1e-14);
  EXPECT_LT(h.max_asymmetry, 1e-14);
}

TEST(Certify, PassesOnSmallLattices) {
  for (const auto& cfg : {make(1, 1, Boundary::Closed, 0.5), make(2, 2, Boundary::Closed, 2.0),
                          make(2, 2, Boundary::Periodic, 1.0), make(2, 3, Boundary::Periodic, 0.5)}) {
    const auto r = certify_isomorphism(cfg);
    EXPECT_TRUE(r.passed) << r.to_json().dump();
    EXPECT_TRUE(r.bijective);
    EXPECT_LT(r.max_deviation, 1e-10);
  }
}

TEST(Certify, ShiftValues) {
  const auto k = Couplings::from_lambda(1.0);
  const auto closed = certify_isomorphism(make(2, 3, Boundary::Closed));
  EXPECT_NEAR(closed.shift, 2 * 6 * k.h_x, 1e-10);
  const auto periodic = certify_isomorphism(make(2, 3, Boundary::Periodic));
  EXPECT_NEAR(periodic.shift, 2 * 6 * k.h_x - 3 * 6 * k.J, 1e-10);
}

TEST(Certify, DetectsCorruptedCoupling) {
  const auto cfg = make(2, 2, Boundary::Closed);
  Couplings k = Couplings::from_lambda(1.0);
  k.h_x *= 1.001;
  const auto r = certify_isomorphism(cfg, {.spin_couplings = k});
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.max_deviation, 0.001 * k.h_x / 1.001, 1e-9);
  EXPECT_NE(r.worst.row, r.worst.col);
  const auto j = r.to_json();
  EXPECT_FALSE(j.at("passed").get<bool>());
}
