#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hexgauge/momentum.hpp"
#include "hexgauge/spin_basis.hpp"

namespace hexgauge {

inline constexpr std::string_view kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Record of one CLI run. Contains no timestamps or host data, so identical
/// inputs give a byte-identical manifest.
struct RunManifest {
  std::string command;
  nlohmann::json config;     // echo of the resolved configuration
  nlohmann::json arguments;  // command-specific parameters
  std::vector<std::pair<std::string, std::string>> outputs;  // file name, sha256

  /// Digest of the canonical dump of {command, config, arguments}.
  std::string input_digest() const;
  void add_output(const std::filesystem::path& path);
  nlohmann::json to_json() const;
  void write(const std::filesystem::path& path) const;
};

struct TimeSample {
  double t = 0.0;
  double wilson1 = 0.0;
  double wilson2 = 0.0;
  double energy = 0.0;
  double norm = 1.0;
};

void write_spectrum_csv(const std::filesystem::path& path, const std::vector<double>& eigenvalues);
void write_sector_csv(const std::filesystem::path& path, const std::vector<SectorSpectrum>& sectors);
void write_timeseries_csv(const std::filesystem::path& path, const std::vector<TimeSample>& samples);
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

/// Representatives (hex bit words) and normalizations of one momentum sector.
nlohmann::json sector_to_json(const MomentumSector& sector);

}  // namespace hexgauge
