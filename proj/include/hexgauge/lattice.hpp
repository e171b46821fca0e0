#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace hexgauge {

enum class Boundary { Closed, Periodic };

std::string_view to_string(Boundary bc);
Boundary parse_boundary(std::string_view text);

/// Position of a hexagonal plaquette. `i` runs along x = (1, 0) and `j`
/// along y = (1/2, sqrt(3)/2) of the triangular lattice of plaquette centers.
struct PlaqCoord {
  int i = 0;
  int j = 0;

  friend auto operator<=>(const PlaqCoord&, const PlaqCoord&) = default;
};

/// A neighbor slot is empty when it falls outside a closed lattice.
using NeighborSlot = std::optional<PlaqCoord>;

/// Lattice dimensions, boundary condition and the dimensionless coupling
/// lambda = a g^2. Energies everywhere are in units of 1/a.
struct LatticeConfig {
  int nx = 1;
  int ny = 1;
  Boundary bc = Boundary::Closed;
  double lambda = 1.0;

  int size() const { return nx * ny; }
  bool periodic() const { return bc == Boundary::Periodic; }

  /// Throws std::invalid_argument on non-positive sizes or coupling, or on a
  /// periodic lattice thinner than two plaquettes in either direction.
  void validate() const;

  int linear_index(PlaqCoord c) const { return c.i + nx * c.j; }
  PlaqCoord coord(int index) const { return {index % nx, index / nx}; }
  bool contains(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }

  /// Applies the boundary condition to a raw (possibly out of range) position.
  NeighborSlot resolve(int i, int j) const;

  friend bool operator==(const LatticeConfig&, const LatticeConfig&) = default;
};

/// The three bond directions (0,1), (1,0), (1,-1); each bond of the
/// triangular plaquette lattice is one plaquette plus one of these offsets.
inline constexpr std::array<std::array<int, 2>, 3> kBondDirections{{{0, 1}, {1, 0}, {1, -1}}};

/// Ring of the six plaquettes around `c`, in the order
/// (i,j+1), (i+1,j), (i+1,j-1), (i,j-1), (i-1,j), (i-1,j+1).
std::array<NeighborSlot, 6> neighbor_chain6(PlaqCoord c, const LatticeConfig& cfg);

/// Ring of the eight plaquettes around the vertical pair (i,j), (i,j+1):
/// (i,j+2), (i+1,j+1), (i+1,j), (i+1,j-1), (i,j-1), (i-1,j), (i-1,j+1), (i-1,j+2).
/// Throws std::invalid_argument when the partner (i,j+1) lies outside a closed lattice.
std::array<NeighborSlot, 8> neighbor_chain8(PlaqCoord c, const LatticeConfig& cfg);

struct Bond {
  int first = 0;   // linear plaquette index
  int second = 0;  // linear plaquette index

  friend bool operator==(const Bond&, const Bond&) = default;
};

/// Plaquette pairs (p, p + d) for every d in kBondDirections. On a periodic
/// lattice this is exactly 3N bonds, repeated pairs included; on a closed
/// lattice only pairs with both ends inside are returned.
std::vector<Bond> forward_bonds(const LatticeConfig& cfg);

LatticeConfig parse_config(const nlohmann::json& j);
LatticeConfig load_config(const std::string& path);
nlohmann::json to_json(const LatticeConfig& cfg);

}  // namespace hexgauge
