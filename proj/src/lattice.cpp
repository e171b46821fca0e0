#include "hexgauge/lattice.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace hexgauge {

namespace {

int wrap(int value, int period) {
  const int r = value % period;
  return r < 0 ? r + period : r;
}

template <std::size_t K>
std::array<NeighborSlot, K> resolve_ring(PlaqCoord c, const LatticeConfig& cfg,
                                         const std::array<std::array<int, 2>, K>& offsets) {
  std::array<NeighborSlot, K> ring;
  for (std::size_t k = 0; k < K; ++k) {
    ring[k] = cfg.resolve(c.i + offsets[k][0], c.j + offsets[k][1]);
  }
  return ring;
}

constexpr std::array<std::array<int, 2>, 6> kRing6{{{0, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}}};
constexpr std::array<std::array<int, 2>, 8> kRing8{
    {{0, 2}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {-1, 2}}};

}  // namespace

std::string_view to_string(Boundary bc) {
  return bc == Boundary::Periodic ? "periodic" : "closed";
}

Boundary parse_boundary(std::string_view text) {
  if (text == "periodic") return Boundary::Periodic;
  if (text == "closed") return Boundary::Closed;
  throw std::invalid_argument("unknown boundary condition '" + std::string(text) + "'");
}

void LatticeConfig::validate() const {
  if (nx < 1 || ny < 1) {
    throw std::invalid_argument("lattice dimensions must be positive");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("coupling lambda must be positive and finite");
  }
  if (periodic() && (nx < 2 || ny < 2)) {
    throw std::invalid_argument("periodic lattices need at least 2 plaquettes along x and y");
  }
  if (size() > 62) {
    throw std::invalid_argument("lattice exceeds 62 plaquettes");
  }
}

NeighborSlot LatticeConfig::resolve(int i, int j) const {
  if (periodic()) return PlaqCoord{wrap(i, nx), wrap(j, ny)};
  if (contains(i, j)) return PlaqCoord{i, j};
  return std::nullopt;
}

std::array<NeighborSlot, 6> neighbor_chain6(PlaqCoord c, const LatticeConfig& cfg) {
  return resolve_ring(c, cfg, kRing6);
}

std::array<NeighborSlot, 8> neighbor_chain8(PlaqCoord c, const LatticeConfig& cfg) {
  if (!cfg.resolve(c.i, c.j + 1)) {
    throw std::invalid_argument("two-plaquette partner lies outside the closed lattice");
  }
  return resolve_ring(c, cfg, kRing8);
}

std::vector<Bond> forward_bonds(const LatticeConfig& cfg) {
  std::vector<Bond> bonds;
  bonds.reserve(3 * static_cast<std::size_t>(cfg.size()));
  for (int j = 0; j < cfg.ny; ++j) {
    for (int i = 0; i < cfg.nx; ++i) {
      for (const auto& d : kBondDirections) {
        if (auto other = cfg.resolve(i + d[0], j + d[1])) {
          bonds.push_back({cfg.linear_index({i, j}), cfg.linear_index(*other)});
        }
      }
    }
  }
  return bonds;
}

LatticeConfig parse_config(const nlohmann::json& j) {
  LatticeConfig cfg;
  cfg.nx = j.value("nx", cfg.nx);
  cfg.ny = j.value("ny", cfg.ny);
  cfg.bc = parse_boundary(j.value("bc", std::string(to_string(cfg.bc))));
  cfg.lambda = j.value("lambda", cfg.lambda);
  cfg.validate();
  return cfg;
}

LatticeConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  return parse_config(nlohmann::json::parse(in));
}

nlohmann::json to_json(const LatticeConfig& cfg) {
  return {{"nx", cfg.nx}, {"ny", cfg.ny}, {"bc", to_string(cfg.bc)}, {"lambda", cfg.lambda}};
}

}  // namespace hexgauge
