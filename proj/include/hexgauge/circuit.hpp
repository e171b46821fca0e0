#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hexgauge/hamiltonian.hpp"
#include "hexgauge/lattice.hpp"
#include "hexgauge/spin_basis.hpp"

namespace hexgauge {

/// coefficient * sigma^x_{x_site} * prod_{q in z_sites} sigma^z_q, in spin
/// (not qubit) Pauli operators. z_sites is sorted ascending.
struct PauliTerm {
  double coefficient = 0.0;
  int x_site = 0;
  std::vector<int> z_sites;
};

/// Expands the magnetic amplitude (-1/2)^c at `c` into sigma^z strings over
/// its six-plaquette ring. Out-of-lattice slots are fixed at z = -1 and
/// repeated plaquettes are merged. Throws std::logic_error if a collected
/// coefficient keeps an imaginary part of 1e-12 or more.
std::vector<PauliTerm> pauli_expand(PlaqCoord c, const LatticeConfig& cfg);

/// sum over terms of coefficient * prod z on state s (the sigma^x factor is ignored).
double evaluate_expansion(const std::vector<PauliTerm>& terms, SpinState s);

enum class GateKind { H, CX, RZ };

struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;          // target for H and RZ, control for CX
  int q1 = -1;         // CX target
  double angle = 0.0;  // RZ(angle) = exp(-i angle Z / 2)

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// One Trotter step repeated `steps` times. Qubit q holds plaquette q, with
/// |1> meaning spin up (so sigma^z = -Z).
struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;  // a single step
  int steps = 1;
  double dt = 0.0;
  /// Constant dropped from the Hamiltonian: the circuit implements
  /// exp(-i (H - energy_offset) dt) per step.
  double energy_offset = 0.0;
};

struct GateCounts {
  std::size_t h = 0;
  std::size_t cx = 0;
  std::size_t rz = 0;
};

GateCounts count_gates(const Circuit& circ);  // per step

/// exp(-i w dt z_p z_q): CX(p,q) RZ(2 w dt) on q, CX(p,q).
void emit_zz(std::vector<Gate>& out, int p, int q, double w, double dt);

/// exp(-i w dt z_p).
void emit_z(std::vector<Gate>& out, int p, double w, double dt);

/// exp(-i weight dt term): H on the x site, CX ladder ascending over the
/// sorted support, RZ on the highest qubit, mirrored ladder, closing H.
void emit_pauli_term(std::vector<Gate>& out, const PauliTerm& term, double weight, double dt);

/// Only the diagonal (sigma^z and sigma^z sigma^z) part of one step.
Circuit emit_diagonal_step(const LatticeConfig& cfg, double dt, const Couplings& k);

/// First-order Trotter step: diagonal terms, then every Pauli string of the
/// magnetic term plaquette by plaquette.
Circuit emit_trotter_step(const LatticeConfig& cfg, double dt);
Circuit emit_trotter_step(const LatticeConfig& cfg, double dt, const Couplings& k);
Circuit emit_trotter_circuit(const LatticeConfig& cfg, double dt, int steps);

/// OpenQASM 2.0 with all steps written out.
void write_qasm(std::ostream& out, const Circuit& circ);
std::string to_qasm(const Circuit& circ);

/// Largest register the statevector simulator accepts.
inline constexpr int kMaxSimulatedQubits = 20;

/// Applies every step of the circuit to a 2^n amplitude vector (index bit q = qubit q).
Eigen::VectorXcd simulate(const Circuit& circ, const Eigen::VectorXcd& psi);

struct CircuitCheck {
  double max_deviation = 0.0;  // max over probes of || psi_circuit - psi_exact ||
  std::size_t probes = 0;
};

/// Compares the circuit with exact evolution by exp(-i H steps dt) on the
/// unreduced 2^N space (the constant energy_offset phased out). Probes are
/// all basis states up to 64 amplitudes, otherwise the vacuum, every single
/// flip and the uniform superposition.
CircuitCheck verify_circuit(const Circuit& circ, const LatticeConfig& cfg);
CircuitCheck verify_circuit(const Circuit& circ, const LatticeConfig& cfg, const Couplings& k);

}  // namespace hexgauge
