#include "hexgauge/spin_basis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace hexgauge {

CanonicalForm canonicalize(SpinState s, const LatticeConfig& cfg) {
  const SpinState c = complement(s, cfg);
  if (c < s) return {c, true};
  return {s, false};
}

SpinState translate(SpinState s, int rx, int ry, const LatticeConfig& cfg) {
  if (!cfg.periodic()) {
    throw std::logic_error("translations are defined only for periodic lattices");
  }
  SpinState out;
  for (int j = 0; j < cfg.ny; ++j) {
    for (int i = 0; i < cfg.nx; ++i) {
      if (!s.up(cfg.linear_index({i, j}))) continue;
      const PlaqCoord to = *cfg.resolve(i + rx, j + ry);
      out.bits |= std::uint64_t{1} << cfg.linear_index(to);
    }
  }
  return out;
}

std::vector<SpinState> enumerate_basis(const LatticeConfig& cfg) {
  if (cfg.size() > kMaxEnumeratedSites) {
    throw std::length_error("basis enumeration capacity exceeded");
  }
  const std::uint64_t count = std::uint64_t{1} << (cfg.periodic() ? cfg.size() - 1 : cfg.size());
  std::vector<SpinState> states(count);
  for (std::uint64_t b = 0; b < count; ++b) states[b] = {b};
  return states;
}

SpinBasis::SpinBasis(const LatticeConfig& cfg) : SpinBasis(cfg, cfg.periodic()) {}

SpinBasis::SpinBasis(const LatticeConfig& cfg, bool quotient) : cfg_(cfg), quotient_(quotient) {
  cfg_.validate();
  if (cfg_.size() > kMaxEnumeratedSites) {
    throw std::length_error("basis capacity exceeded");
  }
  dim_ = std::size_t{1} << (quotient_ ? cfg_.size() - 1 : cfg_.size());
}

SpinBasis SpinBasis::unreduced(const LatticeConfig& cfg) { return SpinBasis(cfg, false); }

Translator::Translator(const LatticeConfig& cfg) : cfg_(cfg) {
  if (!cfg.periodic()) {
    throw std::logic_error("translations are defined only for periodic lattices");
  }
  const int n = cfg.size();
  targets_.resize(static_cast<std::size_t>(n) * n);
  for (int ry = 0; ry < cfg.ny; ++ry) {
    for (int rx = 0; rx < cfg.nx; ++rx) {
      const int t = rx + cfg.nx * ry;
      for (int site = 0; site < n; ++site) {
        const PlaqCoord c = cfg.coord(site);
        targets_[t * n + site] = cfg.linear_index(*cfg.resolve(c.i + rx, c.j + ry));
      }
    }
  }
}

SpinState Translator::apply(SpinState s, int rx, int ry) const {
  const int n = cfg_.size();
  rx = ((rx % cfg_.nx) + cfg_.nx) % cfg_.nx;
  ry = ((ry % cfg_.ny) + cfg_.ny) % cfg_.ny;
  const int* target = &targets_[(rx + cfg_.nx * ry) * n];
  SpinState out;
  for (std::uint64_t rest = s.bits; rest != 0; rest &= rest - 1) {
    const int site = std::countr_zero(rest);
    out.bits |= std::uint64_t{1} << target[site];
  }
  return out;
}

OrbitTable::OrbitTable(const LatticeConfig& cfg) : cfg_(cfg), translator_(cfg) {
  const SpinBasis basis(cfg);
  constexpr std::uint32_t kUnseen = ~std::uint32_t{0};
  entries_.assign(basis.dim(), Entry{kUnseen, 0, 0});
  // Ascending sweep: the first unseen state is the smallest of its orbit.
  for (std::uint64_t b = 0; b < basis.dim(); ++b) {
    if (entries_[b].orbit != kUnseen) continue;
    const auto orbit = static_cast<std::uint32_t>(reps_.size());
    reps_.push_back({b});
    for (int ry = 0; ry < cfg.ny; ++ry) {
      for (int rx = 0; rx < cfg.nx; ++rx) {
        const SpinState t = canonicalize(translator_.apply({b}, rx, ry), cfg).state;
        if (entries_[t.bits].orbit == kUnseen) entries_[t.bits] = {orbit, rx, ry};
      }
    }
  }
}

std::ptrdiff_t MomentumSector::row_of_orbit(std::uint32_t orbit) const {
  const auto it = std::lower_bound(orbits.begin(), orbits.end(), orbit);
  if (it == orbits.end() || *it != orbit) return -1;
  return it - orbits.begin();
}

std::complex<double> lattice_phase(long long ax, long long ay, const LatticeConfig& cfg) {
  const long long period = static_cast<long long>(cfg.nx) * cfg.ny;
  long long numerator = (ax * cfg.ny + ay * cfg.nx) % period;
  if (numerator < 0) numerator += period;
  if (numerator == 0) return {1.0, 0.0};
  if (2 * numerator == period) return {-1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(numerator) / static_cast<double>(period);
  return {std::cos(angle), std::sin(angle)};
}

double momentum_norm(SpinState rep, int qx, int qy, const OrbitTable& orbits) {
  const LatticeConfig& cfg = orbits.config();
  std::vector<std::pair<std::uint64_t, std::complex<double>>> terms;
  terms.reserve(cfg.size());
  for (int ry = 0; ry < cfg.ny; ++ry) {
    for (int rx = 0; rx < cfg.nx; ++rx) {
      const SpinState t = canonicalize(orbits.translator().apply(rep, rx, ry), cfg).state;
      terms.emplace_back(t.bits, lattice_phase(-static_cast<long long>(qx) * rx,
                                               -static_cast<long long>(qy) * ry, cfg));
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  double norm = 0.0;
  for (std::size_t k = 0; k < terms.size();) {
    std::complex<double> amplitude{};
    std::size_t l = k;
    for (; l < terms.size() && terms[l].first == terms[k].first; ++l) amplitude += terms[l].second;
    norm += std::norm(amplitude);
    k = l;
  }
  return norm;
}

MomentumSector build_sector(const OrbitTable& orbits, int qx, int qy) {
  const LatticeConfig& cfg = orbits.config();
  if (qx < 0 || qx >= cfg.nx || qy < 0 || qy >= cfg.ny) {
    throw std::out_of_range("momentum quantum numbers out of range");
  }
  MomentumSector sector;
  sector.qx = qx;
  sector.qy = qy;
  sector.kx = 2.0 * std::numbers::pi * qx / cfg.nx;
  sector.ky = 2.0 * std::numbers::pi * qy / cfg.ny;
  const auto reps = orbits.representatives();
  for (std::size_t orbit = 0; orbit < reps.size(); ++orbit) {
    const double norm = momentum_norm(reps[orbit], qx, qy, orbits);
    if (norm < 1e-12) continue;
    sector.reps.push_back(reps[orbit]);
    sector.orbits.push_back(static_cast<std::uint32_t>(orbit));
    sector.norms.push_back(norm);
  }
  return sector;
}

MomentumSector build_sector(const LatticeConfig& cfg, int qx, int qy) {
  return build_sector(OrbitTable(cfg), qx, qy);
}

}  // namespace hexgauge
