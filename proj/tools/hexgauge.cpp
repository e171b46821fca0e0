// hexgauge: command-line driver for the honeycomb SU(2) spin model.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "hexgauge/circuit.hpp"
#include "hexgauge/hamiltonian.hpp"
#include "hexgauge/io.hpp"
#include "hexgauge/lattice.hpp"
#include "hexgauge/momentum.hpp"
#include "hexgauge/observables.hpp"
#include "hexgauge/oracle.hpp"
#include "hexgauge/spin_basis.hpp"

namespace fs = std::filesystem;
using namespace hexgauge;

namespace {

struct ConfigFlags {
  std::string file;
  std::optional<int> nx;
  std::optional<int> ny;
  std::optional<std::string> bc;
  std::optional<double> lambda;
  std::string out = ".";

  void attach(CLI::App* app) {
    app->add_option("--config", file, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--nx", nx, "plaquettes along x");
    app->add_option("--ny", ny, "plaquettes along y");
    app->add_option("--bc", bc, "boundary: closed or periodic");
    app->add_option("--lambda", lambda, "coupling lambda");
    app->add_option("--out", out, "output directory");
  }

  LatticeConfig resolve() const {
    nlohmann::json j = nlohmann::json::object();
    if (!file.empty()) {
      std::ifstream in(file);
      j = nlohmann::json::parse(in);
    }
    if (nx) j["nx"] = *nx;
    if (ny) j["ny"] = *ny;
    if (bc) j["bc"] = *bc;
    if (lambda) j["lambda"] = *lambda;
    return parse_config(j);
  }

  fs::path output_dir() const {
    fs::create_directories(out);
    return out;
  }
};

RunManifest make_manifest(const std::string& command, const LatticeConfig& cfg, nlohmann::json arguments) {
  RunManifest m;
  m.command = command;
  m.config = to_json(cfg);
  m.arguments = std::move(arguments);
  return m;
}

void finish(const RunManifest& m, const fs::path& dir) {
  m.write(dir / "manifest.json");
  fmt::print("wrote {}\n", (dir / "manifest.json").string());
}

int cmd_spectrum(const ConfigFlags& flags, bool sectors, const std::string& export_mtx, int lowest) {
  const LatticeConfig cfg = flags.resolve();
  const fs::path dir = flags.output_dir();
  RunManifest manifest =
      make_manifest("spectrum", cfg, {{"sectors", sectors}, {"export_mtx", export_mtx}, {"lowest", lowest}});
  DiagonalizeOptions options{.vectors = false};
  if (lowest > 0) {
    options.mode = SpectrumMode::Lowest;
    options.count = lowest;
  }
  if (sectors) {
    const auto spectra = sector_spectra(cfg, Couplings::from_lambda(cfg.lambda), options);
    write_sector_csv(dir / "sector_spectrum.csv", spectra);
    manifest.add_output(dir / "sector_spectrum.csv");
    std::size_t total = 0;
    for (const auto& s : spectra) total += s.eigenvalues.size();
    fmt::print("{} sectors, {} eigenvalues\n", spectra.size(), total);
  } else {
    const SparseOperator h = build_hamiltonian(cfg);
    const Spectrum spectrum = diagonalize(h, options);
    write_spectrum_csv(dir / "spectrum.csv", spectrum.eigenvalues);
    manifest.add_output(dir / "spectrum.csv");
    fmt::print("dim {}, ground energy {:.12g}\n", h.dim(), spectrum.eigenvalues.front());
  }
  if (!export_mtx.empty()) {
    const fs::path mtx = dir / export_mtx;
    write_matrix_market(mtx.string(), build_hamiltonian(cfg));
    manifest.add_output(mtx);
  }
  finish(manifest, dir);
  return 0;
}

int cmd_sectors(const ConfigFlags& flags) {
  const LatticeConfig cfg = flags.resolve();
  const fs::path dir = flags.output_dir();
  const OrbitTable orbits(cfg);
  nlohmann::json sectors = nlohmann::json::array();
  for (int qy = 0; qy < cfg.ny; ++qy) {
    for (int qx = 0; qx < cfg.nx; ++qx) sectors.push_back(sector_to_json(build_sector(orbits, qx, qy)));
  }
  write_json(dir / "sectors.json", {{"config", to_json(cfg)}, {"orbits", orbits.representatives().size()}, {"sectors", sectors}});
  RunManifest manifest = make_manifest("sectors", cfg, nlohmann::json::object());
  manifest.add_output(dir / "sectors.json");
  finish(manifest, dir);
  return 0;
}

int cmd_verify(const ConfigFlags& flags, double perturb_hx) {
  const LatticeConfig cfg = flags.resolve();
  const fs::path dir = flags.output_dir();
  oracle::CertifyOptions options;
  if (perturb_hx != 0.0) {
    Couplings k = Couplings::from_lambda(cfg.lambda);
    k.h_x *= 1.0 + perturb_hx;
    options.spin_couplings = k;
  }
  const oracle::CertificationReport report = oracle::certify_isomorphism(cfg, options);
  write_json(dir / "verify.json", report.to_json());
  RunManifest manifest = make_manifest("verify", cfg, {{"perturb_hx", perturb_hx}});
  manifest.add_output(dir / "verify.json");
  finish(manifest, dir);
  if (report.passed) {
    fmt::print("PASS: {} states, max deviation {:.3e}, shift {:.12g}\n", report.reachable_states,
               report.max_deviation, report.shift);
    return 0;
  }
  std::cout << report.to_json().dump(2) << '\n';
  return 1;
}

int cmd_wilson(const ConfigFlags& flags, int levels) {
  const LatticeConfig cfg = flags.resolve();
  const fs::path dir = flags.output_dir();
  const SparseOperator h = build_hamiltonian(cfg);
  const Spectrum spectrum = diagonalize(h);
  const SparseOperator o1 = wilson1_operator(h.basis, {0, 0});
  std::optional<SparseOperator> o2;
  if (cfg.periodic() || cfg.ny >= 2) o2 = wilson2_operator(h.basis, {0, 0});

  nlohmann::json rows = nlohmann::json::array();
  const int count = std::min<int>(levels, static_cast<int>(spectrum.eigenvalues.size()));
  for (int n = 0; n < count; ++n) {
    const StateVector psi{h.basis, spectrum.vectors.col(n).cast<std::complex<double>>()};
    nlohmann::json row{{"level", n}, {"energy", spectrum.eigenvalues[static_cast<std::size_t>(n)]},
                       {"O1", expectation(o1, psi).real()}};
    row["O2"] = o2 ? nlohmann::json(expectation(*o2, psi).real()) : nlohmann::json(nullptr);
    rows.push_back(row);
  }
  write_json(dir / "wilson.json", {{"config", to_json(cfg)}, {"levels", rows}});
  RunManifest manifest = make_manifest("wilson", cfg, {{"levels", levels}});
  manifest.add_output(dir / "wilson.json");
  finish(manifest, dir);
  return 0;
}

int cmd_evolve(const ConfigFlags& flags, double t, int steps) {
  const LatticeConfig cfg = flags.resolve();
  const fs::path dir = flags.output_dir();
  const SparseOperator h = build_hamiltonian(cfg);
  const SparseOperator o1 = wilson1_operator(h.basis, {0, 0});
  std::optional<SparseOperator> o2;
  if (cfg.periodic() || cfg.ny >= 2) o2 = wilson2_operator(h.basis, {0, 0});

  const Evolver evolver(h);
  const StateVector vacuum = StateVector::basis_state(h.basis, SpinState{});
  std::vector<TimeSample> samples;
  for (int n = 0; n <= steps; ++n) {
    const double time = steps == 0 ? 0.0 : t * n / steps;
    const StateVector psi = evolver.evolve(vacuum, time);
    samples.push_back({time, expectation(o1, psi).real(), o2 ? expectation(*o2, psi).real() : std::nan(""),
                       evolver.energy(psi), psi.norm()});
  }
  write_timeseries_csv(dir / "evolution.csv", samples);
  RunManifest manifest = make_manifest("evolve", cfg, {{"t", t}, {"steps", steps}, {"initial", "vacuum"}});
  manifest.add_output(dir / "evolution.csv");
  finish(manifest, dir);
  return 0;
}

int cmd_emit_circuit(const ConfigFlags& flags, double dt, int steps, const std::string& qasm) {
  const LatticeConfig cfg = flags.resolve();
  const fs::path dir = flags.output_dir();
  const Circuit circ = emit_trotter_circuit(cfg, dt, steps);
  const fs::path qasm_path = dir / (qasm.empty() ? std::string("circuit.qasm") : qasm);
  {
    std::ofstream out(qasm_path);
    write_qasm(out, circ);
  }
  RunManifest manifest = make_manifest("emit-circuit", cfg, {{"dt", dt}, {"steps", steps}});
  manifest.add_output(qasm_path);
  const GateCounts counts = count_gates(circ);
  nlohmann::json report{{"qubits", circ.num_qubits},
                        {"steps", circ.steps},
                        {"dt", circ.dt},
                        {"energy_offset", circ.energy_offset},
                        {"gates_per_step", {{"h", counts.h}, {"cx", counts.cx}, {"rz", counts.rz}}}};
  if (cfg.size() <= 12) {
    const CircuitCheck check = verify_circuit(circ, cfg);
    report["max_deviation"] = check.max_deviation;
    report["probes"] = check.probes;
    fmt::print("max deviation from exact evolution {:.3e} over {} probes\n", check.max_deviation, check.probes);
  }
  write_json(dir / "circuit_report.json", report);
  manifest.add_output(dir / "circuit_report.json");
  finish(manifest, dir);
  return 0;
}

int cmd_basis(const ConfigFlags& flags) {
  const LatticeConfig cfg = flags.resolve();
  const fs::path dir = flags.output_dir();
  const SpinBasis basis(cfg);
  {
    std::ofstream out(dir / "basis.csv");
    fmt::print(out, "index,state\n");
    for (std::size_t k = 0; k < basis.dim(); ++k) fmt::print(out, "{},{:#x}\n", k, basis.state(k).bits);
  }
  RunManifest manifest = make_manifest("basis", cfg, nlohmann::json::object());
  manifest.add_output(dir / "basis.csv");
  finish(manifest, dir);
  fmt::print("dim {}\n", basis.dim());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact diagonalization of the honeycomb SU(2) j<=1/2 spin model"};
  app.require_subcommand(1);

  ConfigFlags spectrum_flags, sectors_flags, verify_flags, wilson_flags, evolve_flags, circuit_flags, basis_flags;

  auto* spectrum = app.add_subcommand("spectrum", "diagonalize the Hamiltonian");
  spectrum_flags.attach(spectrum);
  bool sectors = false;
  std::string export_mtx;
  int lowest = 0;
  spectrum->add_flag("--sectors", sectors, "resolve momentum sectors first (periodic only)");
  spectrum->add_option("--export-mtx", export_mtx, "also write H as MatrixMarket to this file name");
  spectrum->add_option("--lowest", lowest, "only the lowest n eigenvalues");

  auto* sectors_cmd = app.add_subcommand("sectors", "dump momentum-sector representatives");
  sectors_flags.attach(sectors_cmd);

  auto* verify = app.add_subcommand("verify", "certify the spin model against the gauge-basis oracle");
  verify_flags.attach(verify);
  double perturb_hx = 0.0;
  verify->add_option("--perturb-hx", perturb_hx, "relative error injected into h_x (test hook)");

  auto* wilson = app.add_subcommand("wilson", "Wilson-loop expectations in low eigenstates");
  wilson_flags.attach(wilson);
  int levels = 4;
  wilson->add_option("--levels", levels, "number of eigenstates");

  auto* evolve = app.add_subcommand("evolve", "vacuum quench time series");
  evolve_flags.attach(evolve);
  double t = 1.0;
  int steps = 10;
  evolve->add_option("--t", t, "final time in units of a");
  evolve->add_option("--steps", steps, "number of intervals");

  auto* circuit = app.add_subcommand("emit-circuit", "emit and verify a Trotter circuit");
  circuit_flags.attach(circuit);
  double dt = 0.01;
  int trotter_steps = 1;
  std::string qasm;
  circuit->add_option("--dt", dt, "Trotter time step");
  circuit->add_option("--steps", trotter_steps, "number of Trotter steps");
  circuit->add_option("--emit-qasm", qasm, "QASM file name inside --out");

  auto* basis = app.add_subcommand("basis", "list the physical basis");
  basis_flags.attach(basis);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*spectrum) return cmd_spectrum(spectrum_flags, sectors, export_mtx, lowest);
    if (*sectors_cmd) return cmd_sectors(sectors_flags);
    if (*verify) return cmd_verify(verify_flags, perturb_hx);
    if (*wilson) return cmd_wilson(wilson_flags, levels);
    if (*evolve) return cmd_evolve(evolve_flags, t, steps);
    if (*circuit) return cmd_emit_circuit(circuit_flags, dt, trotter_steps, qasm);
    if (*basis) return cmd_basis(basis_flags);
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
