#include "hexgauge/observables.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace hexgauge {

namespace {

using Triplet = Eigen::Triplet<double>;

void require_same_basis(const SpinBasis& a, const SpinBasis& b) {
  if (!(a == b)) throw std::invalid_argument("state vectors refer to different bases");
}

template <typename AmplitudeFn, typename FlipFn>
StateVector apply_local(const StateVector& psi, AmplitudeFn&& amplitude, FlipFn&& flip) {
  StateVector out{psi.basis, Eigen::VectorXcd::Zero(psi.amplitudes.size())};
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
    if (psi.amplitudes[i] == std::complex<double>{}) continue;
    const SpinState s = psi.basis.state(static_cast<std::size_t>(i));
    out.amplitudes[static_cast<Eigen::Index>(psi.basis.index_of(flip(s)))] += amplitude(s) * psi.amplitudes[i];
  }
  return out;
}

template <typename AmplitudeFn, typename FlipFn>
SparseOperator local_operator(const SpinBasis& basis, AmplitudeFn&& amplitude, FlipFn&& flip) {
  std::vector<Triplet> triplets;
  triplets.reserve(basis.dim());
  for (std::size_t col = 0; col < basis.dim(); ++col) {
    const SpinState s = basis.state(col);
    triplets.emplace_back(static_cast<int>(basis.index_of(flip(s))), static_cast<int>(col), amplitude(s));
  }
  RealSparse m(static_cast<Eigen::Index>(basis.dim()), static_cast<Eigen::Index>(basis.dim()));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return {basis, std::move(m)};
}

// Deterministic start vector with no translation or flip symmetry.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> start_vector(Eigen::Index n, int salt) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) + 0.5 + salt;
    v[i] = Scalar(std::cos(0.7 * x + 0.013 * x * x) + 0.1 * std::sin(1.3 * x));
  }
  return v.normalized();
}

template <typename Scalar>
double max_residual(const Eigen::SparseMatrix<Scalar, Eigen::RowMajor>& h, const std::vector<double>& values,
                    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& vectors) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    const auto v = vectors.col(k);
    const double r = (h * v - values[static_cast<std::size_t>(k)] * v).norm() / v.norm();
    worst = std::max(worst, r);
  }
  return worst;
}

template <typename Scalar>
BasicSpectrum<Scalar> dense_spectrum(const Eigen::SparseMatrix<Scalar, Eigen::RowMajor>& h,
                                     const DiagonalizeOptions& options) {
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Dense m = Dense(h);
  Eigen::SelfAdjointEigenSolver<Dense> solver(
      m, options.vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", NAN);
  BasicSpectrum<Scalar> out;
  Eigen::Index keep = m.rows();
  if (options.mode == SpectrumMode::Lowest) keep = std::min<Eigen::Index>(keep, options.count);
  out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + keep);
  if (options.vectors) {
    out.vectors = solver.eigenvectors().leftCols(keep);
    out.max_residual = max_residual(h, out.eigenvalues, out.vectors);
  }
  return out;
}

// Lanczos with full reorthogonalization for the lowest eigenpairs.
template <typename Scalar>
BasicSpectrum<Scalar> lanczos_lowest(const Eigen::SparseMatrix<Scalar, Eigen::RowMajor>& h,
                                     const DiagonalizeOptions& options) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = h.rows();
  const int wanted = std::clamp<int>(options.count, 1, static_cast<int>(n));
  const Eigen::Index max_krylov = std::min<Eigen::Index>(n, std::max(4 * wanted + 60, 300));

  Dense basis(n, max_krylov);
  std::vector<double> alpha;
  std::vector<double> beta;
  basis.col(0) = start_vector<Scalar>(n, 0);

  Eigen::VectorXd ritz_values;
  Eigen::MatrixXd ritz_vectors;
  Eigen::Index k = 0;
  bool converged = false;
  int restarts = 0;
  for (; k < max_krylov; ++k) {
    Vec w = h * basis.col(k);
    alpha.push_back(std::real(basis.col(k).dot(w)));
    for (int pass = 0; pass < 2; ++pass) {
      w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).adjoint() * w);
    }
    double b = w.norm();
    const Eigen::Index m = k + 1;
    const bool check = m >= wanted && (m % 10 == 0 || m == max_krylov || b < 1e-12);
    if (check) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t);
      ritz_values = small.eigenvalues();
      ritz_vectors = small.eigenvectors();
      converged = true;
      for (int i = 0; i < wanted; ++i) {
        const double residual = std::abs(b * ritz_vectors(m - 1, i));
        if (residual > options.tolerance * std::max(1.0, std::abs(ritz_values[i]))) converged = false;
      }
      if (converged || m == n) {
        k = m;
        break;
      }
    }
    if (k + 1 >= max_krylov) {
      k = m;
      break;
    }
    if (b < 1e-12) {
      // Invariant subspace: continue from a fresh direction orthogonal to it.
      w = start_vector<Scalar>(n, ++restarts * 7919);
      for (int pass = 0; pass < 2; ++pass) {
        w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).adjoint() * w);
      }
      basis.col(k + 1) = w.normalized();
      b = 0.0;
    } else {
      basis.col(k + 1) = w / b;
    }
    beta.push_back(b);
  }

  BasicSpectrum<Scalar> out;
  out.eigenvalues.assign(ritz_values.data(), ritz_values.data() + wanted);
  const Dense ritz = basis.leftCols(k) * ritz_vectors.leftCols(wanted).template cast<Scalar>();
  const double residual = max_residual(h, out.eigenvalues, ritz);
  double scale = 1.0;
  for (double e : out.eigenvalues) scale = std::max(scale, std::abs(e));
  if (!converged && residual > 1e-8 * scale) {
    throw ConvergenceError("Lanczos did not converge", residual);
  }
  out.max_residual = residual;
  if (options.vectors) out.vectors = ritz;
  return out;
}

template <typename Scalar>
BasicSpectrum<Scalar> diagonalize_impl(const Eigen::SparseMatrix<Scalar, Eigen::RowMajor>& h,
                                       const DiagonalizeOptions& options) {
  const auto n = static_cast<std::size_t>(h.rows());
  if (options.mode == SpectrumMode::Full) {
    if (n <= options.dense_limit) return dense_spectrum(h, options);
    throw std::length_error("full diagonalization above the dense limit; use Lowest mode");
  }
  if (n <= std::min(options.dense_limit, options.lanczos_above)) return dense_spectrum(h, options);
  return lanczos_lowest(h, options);
}

void append_ratios(std::span<const double> e, std::vector<double>& out) {
  for (std::size_t n = 0; n + 2 < e.size(); ++n) {
    const double s0 = e[n + 1] - e[n];
    const double s1 = e[n + 2] - e[n + 1];
    const double hi = std::max(s0, s1);
    if (hi <= 0.0) continue;
    out.push_back(std::min(s0, s1) / hi);
  }
}

}  // namespace

StateVector StateVector::basis_state(const SpinBasis& basis, SpinState s) {
  StateVector psi{basis, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dim()))};
  psi.amplitudes[static_cast<Eigen::Index>(basis.index_of(s))] = 1.0;
  return psi;
}

std::complex<double> StateVector::dot(const StateVector& other) const {
  require_same_basis(basis, other.basis);
  return amplitudes.dot(other.amplitudes);
}

double wilson1_amplitude(SpinState s, PlaqCoord c, const LatticeConfig& cfg) {
  return -magnetic_coefficient(s, c, cfg);
}

double wilson2_amplitude(SpinState s, PlaqCoord c, const LatticeConfig& cfg) {
  const int c8 = c8_value(s, c, cfg);
  const PlaqCoord partner = *cfg.resolve(c.i, c.j + 1);
  const int zz = s.z(cfg.linear_index(c)) * s.z(cfg.linear_index(partner));
  return -(1.0 + 3.0 * zz) / 4.0 * std::pow(-0.5, c8);
}

namespace {

SpinState pair_flip(SpinState s, PlaqCoord c, const LatticeConfig& cfg) {
  const PlaqCoord partner = *cfg.resolve(c.i, c.j + 1);
  return s.flipped(cfg.linear_index(c)).flipped(cfg.linear_index(partner));
}

void check_pair(PlaqCoord c, const LatticeConfig& cfg) { (void)neighbor_chain8(c, cfg); }

}  // namespace

StateVector wilson1_apply(const StateVector& psi, PlaqCoord c) {
  const LatticeConfig& cfg = psi.basis.config();
  const int site = cfg.linear_index(c);
  return apply_local(
      psi, [&](SpinState s) { return wilson1_amplitude(s, c, cfg); }, [&](SpinState s) { return s.flipped(site); });
}

StateVector wilson1_apply(const SpinBasis& basis, SpinState s, PlaqCoord c) {
  return wilson1_apply(StateVector::basis_state(basis, s), c);
}

StateVector wilson2_apply(const StateVector& psi, PlaqCoord c) {
  const LatticeConfig& cfg = psi.basis.config();
  check_pair(c, cfg);
  return apply_local(
      psi, [&](SpinState s) { return wilson2_amplitude(s, c, cfg); },
      [&](SpinState s) { return pair_flip(s, c, cfg); });
}

StateVector wilson2_apply(const SpinBasis& basis, SpinState s, PlaqCoord c) {
  return wilson2_apply(StateVector::basis_state(basis, s), c);
}

SparseOperator wilson1_operator(const SpinBasis& basis, PlaqCoord c) {
  const LatticeConfig& cfg = basis.config();
  const int site = cfg.linear_index(c);
  return local_operator(
      basis, [&](SpinState s) { return wilson1_amplitude(s, c, cfg); }, [&](SpinState s) { return s.flipped(site); });
}

SparseOperator wilson2_operator(const SpinBasis& basis, PlaqCoord c) {
  const LatticeConfig& cfg = basis.config();
  check_pair(c, cfg);
  return local_operator(
      basis, [&](SpinState s) { return wilson2_amplitude(s, c, cfg); },
      [&](SpinState s) { return pair_flip(s, c, cfg); });
}

std::complex<double> expectation(const SparseOperator& op, const StateVector& psi) {
  require_same_basis(op.basis, psi.basis);
  const Eigen::VectorXcd applied = op.matrix.cast<std::complex<double>>() * psi.amplitudes;
  return psi.amplitudes.dot(applied);
}

Spectrum diagonalize(const SparseOperator& h, const DiagonalizeOptions& options) {
  return diagonalize_impl(h.matrix, options);
}

Spectrum diagonalize(const RealSparse& h, const DiagonalizeOptions& options) {
  return diagonalize_impl(h, options);
}

ComplexSpectrum diagonalize(const ComplexSparse& h, const DiagonalizeOptions& options) {
  return diagonalize_impl(h, options);
}

Evolver::Evolver(const SparseOperator& h)
    : basis_(h.basis), spectrum_(diagonalize(h, DiagonalizeOptions{.mode = SpectrumMode::Full, .vectors = true})) {}

StateVector Evolver::evolve(const StateVector& psi, double t) const {
  require_same_basis(basis_, psi.basis);
  if (t == 0.0) return psi;
  const Eigen::MatrixXd& v = spectrum_.vectors;
  Eigen::VectorXcd coeff = v.transpose().cast<std::complex<double>>() * psi.amplitudes;
  for (Eigen::Index n = 0; n < coeff.size(); ++n) {
    coeff[n] *= std::polar(1.0, -spectrum_.eigenvalues[static_cast<std::size_t>(n)] * t);
  }
  return {basis_, v.cast<std::complex<double>>() * coeff};
}

double Evolver::energy(const StateVector& psi) const {
  require_same_basis(basis_, psi.basis);
  const Eigen::VectorXcd coeff = spectrum_.vectors.transpose().cast<std::complex<double>>() * psi.amplitudes;
  double e = 0.0;
  for (Eigen::Index n = 0; n < coeff.size(); ++n) {
    e += std::norm(coeff[n]) * spectrum_.eigenvalues[static_cast<std::size_t>(n)];
  }
  return e / psi.amplitudes.squaredNorm();
}

std::vector<StateVector> evolve(const SparseOperator& h, const StateVector& psi0, double t, int steps) {
  if (steps < 1) throw std::invalid_argument("evolve needs at least one step");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw std::invalid_argument("initial state is not normalized");
  const Evolver evolver(h);
  std::vector<StateVector> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps) + 1);
  for (int n = 0; n <= steps; ++n) trajectory.push_back(evolver.evolve(psi0, t * n / steps));
  return trajectory;
}

std::vector<double> level_spacing_ratios(std::span<const double> eigenvalues) {
  std::vector<double> out;
  append_ratios(eigenvalues, out);
  return out;
}

std::vector<double> level_spacing_ratios(const std::vector<std::vector<double>>& sectors) {
  std::vector<double> out;
  for (const auto& e : sectors) append_ratios(e, out);
  return out;
}

}  // namespace hexgauge
