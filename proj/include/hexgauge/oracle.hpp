#pragma once

// Truncated Kogut-Susskind theory in the link (electric) basis. Nothing here
// uses the spin-model formulas: states are link assignments, energies come
// from the per-link Casimir, and plaquette matrix elements are products of
// vertex factors evaluated with Wigner 6j symbols. certify_isomorphism then
// compares the result against the spin Hamiltonian.

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hexgauge/hamiltonian.hpp"
#include "hexgauge/lattice.hpp"
#include "hexgauge/spin_basis.hpp"

namespace hexgauge::oracle {

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} from the Racah formula. Zero when a
/// triad violates the triangle condition. Throws std::invalid_argument unless
/// every argument is a non-negative multiple of 1/2.
double wigner_6j(double j1, double j2, double j3, double j4, double j5, double j6);

/// Same with every argument given as 2j.
double wigner_6j_twice(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6);

/// Gauss-law vertex states (j_a, j_x, j_b) under the j <= 1/2 truncation.
enum class VertexState { Zero, A, B, C };

std::array<int, 3> twice_spins(VertexState v);  // (2 j_a, 2 j_x, 2 j_b)
std::optional<VertexState> classify_vertex(int twice_a, int twice_x, int twice_b);

/// Single-vertex factor of the plaquette operator
/// (-1)^{j_a + J_b + j_x} sqrt((2J_a+1)(2j_b+1)) {j_x j_a j_b; 1/2 J_b J_a},
/// arguments as 2j.
std::complex<double> vertex_factor(int tja, int tjx, int tjb, int tJa, int tJb);

/// <bra|M_V|ket> through vertex_factor; zero unless the internal links toggle
/// and the external link is unchanged.
std::complex<double> vertex_element(VertexState bra, VertexState ket);

/// Tabulated nonzero reduced elements: <A|M|0> = <0|M|A> = <B|M|C> = -i, <C|M|B> = i/2.
std::complex<double> vertex_element_table(VertexState bra, VertexState ket);

/// Links, vertices and plaquette boundaries of the honeycomb region. Link -1
/// stands for an external link outside a closed lattice, fixed at j = 0.
struct HoneycombGraph {
  struct Corner {
    int vertex = 0;
    int a = 0;   // internal link entering the corner along the boundary walk
    int x = -1;  // external link
    int b = 0;   // internal link leaving the corner
  };

  int links = 0;
  std::vector<std::array<int, 3>> vertices;        // incident links
  std::vector<std::array<Corner, 6>> plaquettes;   // by linear plaquette index
  std::vector<std::uint64_t> plaquette_masks;      // boundary links of each plaquette
};

/// Upper bound on variable links (one bit each in GaugeConfig).
inline constexpr int kMaxLinks = 64;

HoneycombGraph build_honeycomb(const LatticeConfig& cfg);

/// j in {0, 1/2} per link; bit l set means j = 1/2.
struct GaugeConfig {
  std::uint64_t half_links = 0;

  int twice_j(int link) const { return link >= 0 && ((half_links >> link) & 1u) ? 1 : 0; }
  double j(int link) const { return 0.5 * twice_j(link); }

  friend auto operator<=>(const GaugeConfig&, const GaugeConfig&) = default;
};

bool satisfies_gauss(const HoneycombGraph& graph, GaugeConfig g);

/// Number of external links with j = 1/2 around plaquette p.
int external_half_links(const HoneycombGraph& graph, int p, GaugeConfig g);

struct GaugeEnumeration {
  std::vector<GaugeConfig> gauss;       // every Gauss-law configuration, ascending
  std::vector<GaugeConfig> reachable;   // vacuum-connected subset, ascending
  std::vector<SpinState> toggle_words;  // plaquettes toggled to reach each reachable state
};

/// Throws std::length_error beyond kMaxLinks links.
GaugeEnumeration enumerate_gauge_states(const LatticeConfig& cfg);

/// Plaquette matrix element <toggled g|plaquette p|g> as the product of the
/// six vertex factors. Throws std::logic_error if the B->C and C->B vertex
/// counts differ.
std::complex<double> plaquette_element(const HoneycombGraph& graph, int p, GaugeConfig g);

struct GaugeHamiltonian {
  HoneycombGraph graph;
  std::vector<GaugeConfig> states;
  std::vector<SpinState> toggle_words;
  RealSparse matrix;
  double max_imaginary = 0.0;  // largest |Im| of any plaquette element
  double max_asymmetry = 0.0;  // largest |P_ij - P_ji| of the plaquette operator
};

/// Electric per-link Casimir (3 sqrt(3)/4) lambda j(j+1) plus the magnetic
/// term (4 sqrt(3)/(9 lambda)) (2 - plaquette) on every plaquette, over the
/// vacuum-connected configurations.
GaugeHamiltonian ks_hamiltonian(const LatticeConfig& cfg);

struct CertifyOptions {
  /// Spin-side couplings; defaults to Couplings::from_lambda(cfg.lambda).
  std::optional<Couplings> spin_couplings;
  double tolerance = 1e-10;
};

struct CertificationReport {
  LatticeConfig config;
  std::size_t gauss_states = 0;
  std::size_t reachable_states = 0;
  std::size_t spin_dim = 0;
  bool bijective = false;
  double shift = 0.0;          // fitted gauge minus spin diagonal offset
  double max_deviation = 0.0;  // after removing the shift and sign gauge
  std::size_t sign_flips = 0;  // states whose relative sign had to be flipped
  double max_imaginary = 0.0;
  double max_asymmetry = 0.0;
  struct Entry {
    std::size_t row = 0;  // spin basis indices
    std::size_t col = 0;
    double gauge = 0.0;
    double spin = 0.0;
  } worst;
  bool passed = false;

  nlohmann::json to_json() const;
};

CertificationReport certify_isomorphism(const LatticeConfig& cfg, const CertifyOptions& options = {});

}  // namespace hexgauge::oracle
