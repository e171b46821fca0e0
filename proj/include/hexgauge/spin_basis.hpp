#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "hexgauge/lattice.hpp"

namespace hexgauge {

/// Plaquette occupation word. Bit (i + nx*j) is 1 when the plaquette
/// operator has been applied at (i, j) (spin up) and 0 for spin down.
struct SpinState {
  std::uint64_t bits = 0;

  bool up(int index) const { return (bits >> index) & 1u; }
  /// sigma^z eigenvalue, +1 for up and -1 for down.
  int z(int index) const { return up(index) ? 1 : -1; }
  SpinState flipped(int index) const { return {bits ^ (std::uint64_t{1} << index)}; }

  friend auto operator<=>(const SpinState&, const SpinState&) = default;
};

inline std::uint64_t state_mask(const LatticeConfig& cfg) {
  return cfg.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cfg.size()) - 1;
}

inline SpinState complement(SpinState s, const LatticeConfig& cfg) {
  return {~s.bits & state_mask(cfg)};
}

struct CanonicalForm {
  SpinState state;
  bool flipped = false;
};

/// Numerically smaller of s and its global flip.
CanonicalForm canonicalize(SpinState s, const LatticeConfig& cfg);

/// State used to label s in the physical basis: canonical under periodic
/// boundaries, s itself under closed ones.
inline SpinState physical(SpinState s, const LatticeConfig& cfg) {
  return cfg.periodic() ? canonicalize(s, cfg).state : s;
}

/// Cyclic shift moving the occupation at (i, j) to (i + rx, j + ry).
/// Throws std::logic_error for closed boundaries. Not re-canonicalized.
SpinState translate(SpinState s, int rx, int ry, const LatticeConfig& cfg);

/// Largest lattice enumerate_basis will materialize.
inline constexpr int kMaxEnumeratedSites = 30;

/// Closed: all 2^N words ascending. Periodic: the 2^(N-1) canonical words
/// ascending (one per global-flip pair). Throws std::length_error above
/// kMaxEnumeratedSites.
std::vector<SpinState> enumerate_basis(const LatticeConfig& cfg);

/// The ordered basis a matrix or state vector is expressed in. Under the
/// flip quotient the canonical words are exactly those below 2^(N-1), so
/// every basis index equals the word itself.
class SpinBasis {
 public:
  /// Physical basis of cfg: flip quotient for periodic, all words for closed.
  explicit SpinBasis(const LatticeConfig& cfg);
  /// All 2^N words regardless of the boundary condition.
  static SpinBasis unreduced(const LatticeConfig& cfg);

  const LatticeConfig& config() const { return cfg_; }
  bool flip_quotient() const { return quotient_; }
  std::size_t dim() const { return dim_; }
  SpinState state(std::size_t index) const { return {index}; }
  std::size_t index_of(SpinState s) const {
    return quotient_ ? canonicalize(s, cfg_).state.bits : s.bits;
  }

  friend bool operator==(const SpinBasis& a, const SpinBasis& b) {
    return a.cfg_.nx == b.cfg_.nx && a.cfg_.ny == b.cfg_.ny && a.cfg_.bc == b.cfg_.bc &&
           a.quotient_ == b.quotient_;
  }

 private:
  SpinBasis(const LatticeConfig& cfg, bool quotient);

  LatticeConfig cfg_;
  bool quotient_ = false;
  std::size_t dim_ = 0;
};

/// Precomputed site permutations for every translation (rx, ry).
class Translator {
 public:
  explicit Translator(const LatticeConfig& cfg);

  SpinState apply(SpinState s, int rx, int ry) const;
  int translations() const { return cfg_.size(); }

 private:
  LatticeConfig cfg_;
  // targets_[(rx + nx*ry) * N + site] = destination site
  std::vector<int> targets_;
};

/// Orbits of canonical states under translations combined with global flip.
/// Every canonical state s is stored with its orbit representative b and an
/// offset m such that canonicalize(T^m b) = s.
class OrbitTable {
 public:
  explicit OrbitTable(const LatticeConfig& cfg);

  struct Entry {
    std::uint32_t orbit = 0;
    std::int32_t rx = 0;
    std::int32_t ry = 0;
  };

  const LatticeConfig& config() const { return cfg_; }
  const Translator& translator() const { return translator_; }
  const Entry& locate(SpinState canonical) const { return entries_.at(canonical.bits); }
  std::span<const SpinState> representatives() const { return reps_; }

 private:
  LatticeConfig cfg_;
  Translator translator_;
  std::vector<Entry> entries_;
  std::vector<SpinState> reps_;
};

/// Momentum eigenspace k = (2 pi qx / nx, 2 pi qy / ny) spanned by
/// |a(k)> = N_a^{-1/2} sum_r e^{-i k.r} T^r |a>.
struct MomentumSector {
  int qx = 0;
  int qy = 0;
  double kx = 0.0;
  double ky = 0.0;
  std::vector<SpinState> reps;
  std::vector<std::uint32_t> orbits;  // orbit id of each representative
  std::vector<double> norms;          // N_a

  std::size_t dim() const { return reps.size(); }
  /// Row of the given orbit in this sector, or -1 when the orbit has no
  /// state at this momentum.
  std::ptrdiff_t row_of_orbit(std::uint32_t orbit) const;
};

/// Squared norm of sum_r e^{-i k.r} canonicalize(T^r a), accumulated
/// translate by translate with flip identification.
double momentum_norm(SpinState rep, int qx, int qy, const OrbitTable& orbits);

MomentumSector build_sector(const OrbitTable& orbits, int qx, int qy);
MomentumSector build_sector(const LatticeConfig& cfg, int qx, int qy);

/// Phase e^{i (2 pi qx rx / nx + 2 pi qy ry / ny)} with the angle reduced
/// to an exact multiple of 2 pi / (nx ny) before evaluation.
std::complex<double> lattice_phase(long long qx_rx, long long qy_ry, const LatticeConfig& cfg);

}  // namespace hexgauge
