#include "hexgauge/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "hexgauge/observables.hpp"

namespace hexgauge {

namespace {

using Complex = std::complex<double>;

constexpr double kDropTolerance = 1e-12;

std::vector<int> bits_to_sites(std::uint64_t mask) {
  std::vector<int> sites;
  while (mask != 0) {
    sites.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return sites;
}

// Spin z = -Z on the qubit, so a string of m sigma^z picks up (-1)^m.
double qubit_sign(std::size_t z_count) { return z_count % 2 == 0 ? 1.0 : -1.0; }

void apply_h(Eigen::VectorXcd& psi, int q) {
  const double r = 1.0 / std::sqrt(2.0);
  const Eigen::Index bit = Eigen::Index{1} << q;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (i & bit) continue;
    const Complex a = psi[i];
    const Complex b = psi[i | bit];
    psi[i] = r * (a + b);
    psi[i | bit] = r * (a - b);
  }
}

void apply_cx(Eigen::VectorXcd& psi, int control, int target) {
  const Eigen::Index c = Eigen::Index{1} << control;
  const Eigen::Index t = Eigen::Index{1} << target;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if ((i & c) && !(i & t)) std::swap(psi[i], psi[i | t]);
  }
}

void apply_rz(Eigen::VectorXcd& psi, int q, double angle) {
  const Eigen::Index bit = Eigen::Index{1} << q;
  const Complex down = std::polar(1.0, -angle / 2.0);  // |0>
  const Complex up = std::polar(1.0, angle / 2.0);     // |1>
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] *= (i & bit) ? up : down;
}

}  // namespace

std::vector<PauliTerm> pauli_expand(PlaqCoord c, const LatticeConfig& cfg) {
  const auto ring = neighbor_chain6(c, cfg);
  const double r = 0.5 / std::sqrt(2.0);
  const Complex with_zz{0.5, -r};
  const Complex constant{0.5, r};
  const int x_site = cfg.linear_index(c);

  std::map<std::uint64_t, Complex> collected;
  for (unsigned choice = 0; choice < 64; ++choice) {
    Complex coefficient{1.0, 0.0};
    unsigned positions = 0;  // ring positions carrying an odd power of z
    for (unsigned k = 0; k < 6; ++k) {
      if (choice & (1u << k)) {
        coefficient *= with_zz;
        positions ^= (1u << k) | (1u << ((k + 1) % 6));
      } else {
        coefficient *= constant;
      }
    }
    std::uint64_t sites = 0;
    for (unsigned k = 0; k < 6; ++k) {
      if (!(positions & (1u << k))) continue;
      if (ring[k]) {
        sites ^= std::uint64_t{1} << cfg.linear_index(*ring[k]);
      } else {
        coefficient = -coefficient;
      }
    }
    collected[sites] += coefficient;
  }

  std::vector<PauliTerm> terms;
  for (const auto& [sites, coefficient] : collected) {
    if (std::abs(coefficient.imag()) >= kDropTolerance) {
      throw std::logic_error(fmt::format("imaginary Pauli coefficient {} on string {:#x}", coefficient.imag(), sites));
    }
    if (std::abs(coefficient.real()) < kDropTolerance) continue;
    if ((sites >> x_site) & 1u) throw std::logic_error("sigma^z string overlaps its own sigma^x site");
    terms.push_back({coefficient.real(), x_site, bits_to_sites(sites)});
  }
  return terms;
}

double evaluate_expansion(const std::vector<PauliTerm>& terms, SpinState s) {
  double total = 0.0;
  for (const PauliTerm& t : terms) {
    double value = t.coefficient;
    for (int q : t.z_sites) value *= s.z(q);
    total += value;
  }
  return total;
}

GateCounts count_gates(const Circuit& circ) {
  GateCounts n;
  for (const Gate& g : circ.gates) {
    switch (g.kind) {
      case GateKind::H: ++n.h; break;
      case GateKind::CX: ++n.cx; break;
      case GateKind::RZ: ++n.rz; break;
    }
  }
  return n;
}

void emit_zz(std::vector<Gate>& out, int p, int q, double w, double dt) {
  out.push_back({GateKind::CX, p, q, 0.0});
  out.push_back({GateKind::RZ, q, -1, 2.0 * w * dt});
  out.push_back({GateKind::CX, p, q, 0.0});
}

void emit_z(std::vector<Gate>& out, int p, double w, double dt) {
  out.push_back({GateKind::RZ, p, -1, -2.0 * w * dt});
}

void emit_pauli_term(std::vector<Gate>& out, const PauliTerm& term, double weight, double dt) {
  std::vector<int> support = term.z_sites;
  support.push_back(term.x_site);
  std::sort(support.begin(), support.end());
  const double w = weight * term.coefficient * qubit_sign(term.z_sites.size());

  out.push_back({GateKind::H, term.x_site, -1, 0.0});
  for (std::size_t k = 0; k + 1 < support.size(); ++k) out.push_back({GateKind::CX, support[k], support[k + 1], 0.0});
  out.push_back({GateKind::RZ, support.back(), -1, 2.0 * w * dt});
  for (std::size_t k = support.size() - 1; k > 0; --k) out.push_back({GateKind::CX, support[k - 1], support[k], 0.0});
  out.push_back({GateKind::H, term.x_site, -1, 0.0});
}

Circuit emit_diagonal_step(const LatticeConfig& cfg, double dt, const Couplings& k) {
  cfg.validate();
  Circuit circ;
  circ.num_qubits = cfg.size();
  circ.dt = dt;
  const auto bonds = forward_bonds(cfg);
  if (cfg.periodic()) {
    for (const Bond& b : bonds) emit_zz(circ.gates, b.first, b.second, k.J, dt);
    return circ;
  }
  // h+ n_p - h++ n_p n_q with n = (1 + z) / 2
  std::vector<double> field(static_cast<std::size_t>(cfg.size()), k.h_plus / 2.0);
  circ.energy_offset = cfg.size() * k.h_plus / 2.0;
  for (const Bond& b : bonds) {
    field[static_cast<std::size_t>(b.first)] -= k.h_plus_plus / 4.0;
    field[static_cast<std::size_t>(b.second)] -= k.h_plus_plus / 4.0;
    circ.energy_offset -= k.h_plus_plus / 4.0;
  }
  for (int p = 0; p < cfg.size(); ++p) emit_z(circ.gates, p, field[static_cast<std::size_t>(p)], dt);
  for (const Bond& b : bonds) emit_zz(circ.gates, b.first, b.second, -k.h_plus_plus / 4.0, dt);
  return circ;
}

Circuit emit_trotter_step(const LatticeConfig& cfg, double dt, const Couplings& k) {
  Circuit circ = emit_diagonal_step(cfg, dt, k);
  for (int p = 0; p < cfg.size(); ++p) {
    for (const PauliTerm& term : pauli_expand(cfg.coord(p), cfg)) emit_pauli_term(circ.gates, term, k.h_x, dt);
  }
  return circ;
}

Circuit emit_trotter_step(const LatticeConfig& cfg, double dt) {
  return emit_trotter_step(cfg, dt, Couplings::from_lambda(cfg.lambda));
}

Circuit emit_trotter_circuit(const LatticeConfig& cfg, double dt, int steps) {
  if (steps < 1) throw std::invalid_argument("Trotter step count must be positive");
  Circuit circ = emit_trotter_step(cfg, dt);
  circ.steps = steps;
  return circ;
}

void write_qasm(std::ostream& out, const Circuit& circ) {
  fmt::print(out, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
  fmt::print(out, "// {} Trotter step(s), dt = {:.17g}\n", circ.steps, circ.dt);
  fmt::print(out, "qreg q[{}];\n", circ.num_qubits);
  for (int step = 0; step < circ.steps; ++step) {
    for (const Gate& g : circ.gates) {
      switch (g.kind) {
        case GateKind::H: fmt::print(out, "h q[{}];\n", g.q0); break;
        case GateKind::CX: fmt::print(out, "cx q[{}],q[{}];\n", g.q0, g.q1); break;
        case GateKind::RZ: fmt::print(out, "rz({:.17g}) q[{}];\n", g.angle + 0.0, g.q0); break;
      }
    }
  }
}

std::string to_qasm(const Circuit& circ) {
  std::ostringstream out;
  write_qasm(out, circ);
  return out.str();
}

Eigen::VectorXcd simulate(const Circuit& circ, const Eigen::VectorXcd& psi) {
  if (circ.num_qubits > kMaxSimulatedQubits) throw std::length_error("too many qubits to simulate");
  if (psi.size() != (Eigen::Index{1} << circ.num_qubits)) throw std::invalid_argument("state size does not match the register");
  Eigen::VectorXcd out = psi;
  for (int step = 0; step < circ.steps; ++step) {
    for (const Gate& g : circ.gates) {
      switch (g.kind) {
        case GateKind::H: apply_h(out, g.q0); break;
        case GateKind::CX: apply_cx(out, g.q0, g.q1); break;
        case GateKind::RZ: apply_rz(out, g.q0, g.angle); break;
      }
    }
  }
  return out;
}

CircuitCheck verify_circuit(const Circuit& circ, const LatticeConfig& cfg, const Couplings& k) {
  if (circ.num_qubits != cfg.size()) throw std::invalid_argument("circuit register does not match the lattice");
  const SparseOperator h = cfg.periodic() ? build_periodic_unreduced(cfg, k) : build_closed(cfg, k);
  const Evolver evolver(h);
  const std::size_t dim = h.dim();
  const double t = circ.steps * circ.dt;
  const Complex offset_phase = std::polar(1.0, circ.energy_offset * t);

  std::vector<Eigen::VectorXcd> probes;
  auto basis_probe = [&](std::size_t idx) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(idx)] = 1.0;
    return v;
  };
  if (dim <= 64) {
    for (std::size_t idx = 0; idx < dim; ++idx) probes.push_back(basis_probe(idx));
  } else {
    probes.push_back(basis_probe(0));
    for (int p = 0; p < cfg.size(); ++p) probes.push_back(basis_probe(std::size_t{1} << p));
    probes.push_back(Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(dim), 1.0 / std::sqrt(double(dim))));
  }

  CircuitCheck check;
  check.probes = probes.size();
  for (const Eigen::VectorXcd& probe : probes) {
    const Eigen::VectorXcd exact = offset_phase * evolver.evolve(StateVector{h.basis, probe}, t).amplitudes;
    const Eigen::VectorXcd circuit = simulate(circ, probe);
    check.max_deviation = std::max(check.max_deviation, (circuit - exact).norm());
  }
  return check;
}

CircuitCheck verify_circuit(const Circuit& circ, const LatticeConfig& cfg) {
  return verify_circuit(circ, cfg, Couplings::from_lambda(cfg.lambda));
}

}  // namespace hexgauge
