#include "hexgauge/momentum.hpp"

#include <stdexcept>

#include "hexgauge/parallel.hpp"

namespace hexgauge {

namespace {

using Complex = std::complex<double>;
using ComplexTriplet = Eigen::Triplet<Complex>;

ComplexSparse from_triplets(std::size_t rows, std::size_t cols, const std::vector<ComplexTriplet>& triplets) {
  ComplexSparse m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

void require_periodic(const LatticeConfig& cfg) {
  if (!cfg.periodic()) throw std::invalid_argument("momentum sectors need a periodic lattice");
}

// Where a flipped representative lands: orbit, offset m with
// canonicalize(flip a) = canonicalize(T^m b).
struct Landing {
  std::uint32_t orbit;
  int mx;
  int my;
};

Landing land(SpinState flipped, const OrbitTable& orbits) {
  const SpinState canonical = canonicalize(flipped, orbits.config()).state;
  const auto& e = orbits.locate(canonical);
  if (e.orbit >= orbits.representatives().size()) {
    throw std::logic_error("flip target missing from the orbit table");
  }
  return {e.orbit, e.rx, e.ry};
}

// Shared sum of the O1 / O2 momentum-space formula over translations r:
// -(1/(nx ny)) sqrt(N_b/N_a) sum_r e^{i phi} (local amplitude on a at -r).
template <typename LocalFn>
Eigen::MatrixXcd translated_block(const MomentumSector& ket, const MomentumSector& bra, const OrbitTable& orbits,
                                  LocalFn&& local) {
  const LatticeConfig& cfg = orbits.config();
  const double volume = static_cast<double>(cfg.size());
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(bra.dim()),
                                                  static_cast<Eigen::Index>(ket.dim()));
  for (std::size_t col = 0; col < ket.dim(); ++col) {
    const SpinState a = ket.reps[col];
    for (int ry = 0; ry < cfg.ny; ++ry) {
      for (int rx = 0; rx < cfg.nx; ++rx) {
        const PlaqCoord site = *cfg.resolve(-rx, -ry);
        const auto [amplitude, target] = local(a, site);
        const Landing l = land(target, orbits);
        const std::ptrdiff_t row = bra.row_of_orbit(l.orbit);
        if (row < 0) continue;
        // phi = (k' - k).r - k'.ell with ell = -m
        const Complex phase = lattice_phase(static_cast<long long>(bra.qx - ket.qx) * rx + static_cast<long long>(bra.qx) * l.mx,
                                            static_cast<long long>(bra.qy - ket.qy) * ry + static_cast<long long>(bra.qy) * l.my,
                                            cfg);
        const double scale = std::sqrt(bra.norms[static_cast<std::size_t>(row)] / ket.norms[col]) / volume;
        block(row, static_cast<Eigen::Index>(col)) += -scale * phase * amplitude;
      }
    }
  }
  return block;
}

}  // namespace

SectorBlock hzz_block(const MomentumSector& sector, const LatticeConfig& cfg) {
  require_periodic(cfg);
  std::vector<ComplexTriplet> triplets;
  triplets.reserve(sector.dim());
  for (std::size_t a = 0; a < sector.dim(); ++a) {
    const SpinState s = sector.reps[a];
    int sum = 0;
    for (int j = 0; j < cfg.ny; ++j) {
      for (int i = 0; i < cfg.nx; ++i) {
        const int z = s.z(cfg.linear_index({i, j}));
        for (const auto& d : kBondDirections) {
          sum += z * s.z(cfg.linear_index(*cfg.resolve(i + d[0], j + d[1])));
        }
      }
    }
    triplets.emplace_back(static_cast<int>(a), static_cast<int>(a), Complex(sum, 0.0));
  }
  return {sector.qx, sector.qy, from_triplets(sector.dim(), sector.dim(), triplets)};
}

SectorBlock hx_block(const MomentumSector& sector, const OrbitTable& orbits) {
  const LatticeConfig& cfg = orbits.config();
  require_periodic(cfg);
  std::vector<ComplexTriplet> triplets;
  for (std::size_t col = 0; col < sector.dim(); ++col) {
    const SpinState a = sector.reps[col];
    for (int j = 0; j < cfg.ny; ++j) {
      for (int i = 0; i < cfg.nx; ++i) {
        const PlaqCoord site{i, j};
        const Complex bracket = ring_bracket(a, neighbor_chain6(site, cfg), cfg);
        const Landing l = land(a.flipped(cfg.linear_index(site)), orbits);
        const std::ptrdiff_t row = sector.row_of_orbit(l.orbit);
        // An orbit without a state at this momentum contributes the zero vector.
        if (row < 0) continue;
        // e^{-i k.ell} with ell = -m
        const Complex phase = lattice_phase(static_cast<long long>(sector.qx) * l.mx,
                                            static_cast<long long>(sector.qy) * l.my, cfg);
        const double scale = std::sqrt(sector.norms[static_cast<std::size_t>(row)] / sector.norms[col]);
        triplets.emplace_back(static_cast<int>(row), static_cast<int>(col), scale * phase * bracket);
      }
    }
  }
  return {sector.qx, sector.qy, from_triplets(sector.dim(), sector.dim(), triplets)};
}

SectorBlock sector_hamiltonian(const MomentumSector& sector, const OrbitTable& orbits, const Couplings& k) {
  const SectorBlock zz = hzz_block(sector, orbits.config());
  const SectorBlock x = hx_block(sector, orbits);
  ComplexSparse m = Complex(k.J, 0.0) * zz.matrix + Complex(k.h_x, 0.0) * x.matrix;
  m.makeCompressed();
  return {sector.qx, sector.qy, std::move(m)};
}

Eigen::MatrixXcd wilson1_block(const MomentumSector& ket, const MomentumSector& bra, const OrbitTable& orbits) {
  const LatticeConfig& cfg = orbits.config();
  require_periodic(cfg);
  return translated_block(ket, bra, orbits, [&](SpinState a, PlaqCoord site) {
    return std::pair{ring_bracket(a, neighbor_chain6(site, cfg), cfg), a.flipped(cfg.linear_index(site))};
  });
}

Eigen::MatrixXcd wilson2_block(const MomentumSector& ket, const MomentumSector& bra, const OrbitTable& orbits) {
  const LatticeConfig& cfg = orbits.config();
  require_periodic(cfg);
  return translated_block(ket, bra, orbits, [&](SpinState a, PlaqCoord site) {
    const PlaqCoord partner = *cfg.resolve(site.i, site.j + 1);
    const int p = cfg.linear_index(site);
    const int q = cfg.linear_index(partner);
    const double prefactor = (1.0 + 3.0 * a.z(p) * a.z(q)) / 4.0;
    const Complex bracket = ring_bracket(a, neighbor_chain8(site, cfg), cfg);
    return std::pair{prefactor * bracket, a.flipped(p).flipped(q)};
  });
}

Eigen::MatrixXcd momentum_basis(const MomentumSector& sector, const OrbitTable& orbits) {
  const LatticeConfig& cfg = orbits.config();
  const SpinBasis basis(cfg);
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis.dim()),
                                              static_cast<Eigen::Index>(sector.dim()));
  for (std::size_t col = 0; col < sector.dim(); ++col) {
    const double inv = 1.0 / std::sqrt(sector.norms[col]);
    for (int ry = 0; ry < cfg.ny; ++ry) {
      for (int rx = 0; rx < cfg.nx; ++rx) {
        const SpinState t = orbits.translator().apply(sector.reps[col], rx, ry);
        const auto row = static_cast<Eigen::Index>(basis.index_of(t));
        v(row, static_cast<Eigen::Index>(col)) +=
            inv * lattice_phase(-static_cast<long long>(sector.qx) * rx, -static_cast<long long>(sector.qy) * ry, cfg);
      }
    }
  }
  return v;
}

std::vector<SectorSpectrum> sector_spectra(const LatticeConfig& cfg, const Couplings& k,
                                           const DiagonalizeOptions& options) {
  require_periodic(cfg);
  const OrbitTable orbits(cfg);
  const std::size_t count = static_cast<std::size_t>(cfg.size());
  std::vector<SectorSpectrum> out(count);
  parallel_chunks(count, thread_count(), [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int qx = static_cast<int>(idx) % cfg.nx;
      const int qy = static_cast<int>(idx) / cfg.nx;
      const MomentumSector sector = build_sector(orbits, qx, qy);
      out[idx].qx = qx;
      out[idx].qy = qy;
      if (sector.dim() == 0) continue;
      const SectorBlock h = sector_hamiltonian(sector, orbits, k);
      out[idx].eigenvalues = diagonalize(h.matrix, options).eigenvalues;
    }
  });
  return out;
}

}  // namespace hexgauge
