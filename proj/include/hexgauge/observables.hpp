#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hexgauge/hamiltonian.hpp"
#include "hexgauge/spin_basis.hpp"

namespace hexgauge {

/// Complex amplitudes tagged with the basis they refer to. Arithmetic between
/// vectors of different bases throws std::invalid_argument.
struct StateVector {
  SpinBasis basis;
  Eigen::VectorXcd amplitudes;

  static StateVector basis_state(const SpinBasis& basis, SpinState s);

  double norm() const { return amplitudes.norm(); }
  std::complex<double> dot(const StateVector& other) const;  // <this|other>
};

/// -(-1/2)^c: amplitude of O1 at c on a basis state.
double wilson1_amplitude(SpinState s, PlaqCoord c, const LatticeConfig& cfg);

/// -(1 + 3 z_c z_{c+y})/4 * (-1/2)^{c8}: amplitude of O2 on the pair c, c + y,
/// with every spin read before the flips.
double wilson2_amplitude(SpinState s, PlaqCoord c, const LatticeConfig& cfg);

StateVector wilson1_apply(const StateVector& psi, PlaqCoord c);
StateVector wilson1_apply(const SpinBasis& basis, SpinState s, PlaqCoord c);
StateVector wilson2_apply(const StateVector& psi, PlaqCoord c);
StateVector wilson2_apply(const SpinBasis& basis, SpinState s, PlaqCoord c);

/// Real-space matrices of O1 at c and O2 on (c, c + y).
SparseOperator wilson1_operator(const SpinBasis& basis, PlaqCoord c);
SparseOperator wilson2_operator(const SpinBasis& basis, PlaqCoord c);

std::complex<double> expectation(const SparseOperator& op, const StateVector& psi);

template <typename Scalar>
struct BasicSpectrum {
  std::vector<double> eigenvalues;  // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // empty unless requested
  double max_residual = 0.0;        // max ||H v - E v|| over retained vectors
};

using Spectrum = BasicSpectrum<double>;
using ComplexSpectrum = BasicSpectrum<std::complex<double>>;

enum class SpectrumMode { Full, Lowest };

struct DiagonalizeOptions {
  SpectrumMode mode = SpectrumMode::Full;
  int count = 6;                     // eigenpairs kept in Lowest mode
  bool vectors = true;
  double tolerance = 1e-10;          // Lanczos residual target (relative)
  std::size_t dense_limit = 8192;    // largest dimension diagonalized densely
  std::size_t lanczos_above = 1024;  // Lowest mode uses Lanczos beyond this dimension
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

using ComplexSparse = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

Spectrum diagonalize(const SparseOperator& h, const DiagonalizeOptions& options = {});
Spectrum diagonalize(const RealSparse& h, const DiagonalizeOptions& options = {});
ComplexSpectrum diagonalize(const ComplexSparse& h, const DiagonalizeOptions& options = {});

/// Exact propagator exp(-i H t) from a full spectral decomposition of H.
class Evolver {
 public:
  explicit Evolver(const SparseOperator& h);

  const Spectrum& spectrum() const { return spectrum_; }
  const SpinBasis& basis() const { return basis_; }
  StateVector evolve(const StateVector& psi, double t) const;
  double energy(const StateVector& psi) const;

 private:
  SpinBasis basis_;
  Spectrum spectrum_;
};

/// Trajectory at t_n = n t / steps for n = 0..steps. psi0 must be normalized.
std::vector<StateVector> evolve(const SparseOperator& h, const StateVector& psi0, double t, int steps);

/// r_n = min(s_n, s_{n+1}) / max(s_n, s_{n+1}) over consecutive gaps s_n of
/// an ascending spectrum. Ratios with both gaps zero are undefined and skipped.
std::vector<double> level_spacing_ratios(std::span<const double> eigenvalues);

/// Sector-resolved variant: ratios are formed inside each sector only and
/// concatenated in sector order.
std::vector<double> level_spacing_ratios(const std::vector<std::vector<double>>& sectors);

}  // namespace hexgauge
