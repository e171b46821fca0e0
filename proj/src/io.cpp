#include "hexgauge/io.hpp"

#include <array>
#include <fstream>
#include <iterator>
#include <memory>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <openssl/evp.h>

namespace hexgauge {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int k = 0; k < length; ++k) hex += fmt::format("{:02x}", digest[k]);
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return sha256_hex(data);
}

std::string RunManifest::input_digest() const {
  const nlohmann::json input{{"command", command}, {"config", config}, {"arguments", arguments}};
  return sha256_hex(input.dump());
}

void RunManifest::add_output(const std::filesystem::path& path) {
  outputs.emplace_back(path.filename().string(), sha256_file(path));
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& [name, digest] : outputs) files.push_back({{"file", name}, {"sha256", digest}});
  return {{"tool", "hexgauge"},
          {"version", kToolVersion},
          {"command", command},
          {"config", config},
          {"arguments", arguments},
          {"input_sha256", input_digest()},
          {"deterministic", "no random numbers are used; identical inputs reproduce identical outputs"},
          {"outputs", files}};
}

void RunManifest::write(const std::filesystem::path& path) const { write_json(path, to_json()); }

void write_spectrum_csv(const std::filesystem::path& path, const std::vector<double>& eigenvalues) {
  auto out = open_output(path);
  fmt::print(out, "index,eigenvalue\n");
  for (std::size_t n = 0; n < eigenvalues.size(); ++n) fmt::print(out, "{},{:.17g}\n", n, eigenvalues[n]);
}

void write_sector_csv(const std::filesystem::path& path, const std::vector<SectorSpectrum>& sectors) {
  auto out = open_output(path);
  fmt::print(out, "qx,qy,index,eigenvalue\n");
  for (const SectorSpectrum& s : sectors) {
    for (std::size_t n = 0; n < s.eigenvalues.size(); ++n) {
      fmt::print(out, "{},{},{},{:.17g}\n", s.qx, s.qy, n, s.eigenvalues[n]);
    }
  }
}

void write_timeseries_csv(const std::filesystem::path& path, const std::vector<TimeSample>& samples) {
  auto out = open_output(path);
  fmt::print(out, "t,re_O1,re_O2,energy,norm\n");
  for (const TimeSample& s : samples) {
    fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", s.t, s.wilson1, s.wilson2, s.energy, s.norm);
  }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
  auto out = open_output(path);
  out << value.dump(2) << '\n';
}

nlohmann::json sector_to_json(const MomentumSector& sector) {
  nlohmann::json reps = nlohmann::json::array();
  for (std::size_t a = 0; a < sector.dim(); ++a) {
    reps.push_back({{"state", fmt::format("{:#x}", sector.reps[a].bits)}, {"norm", sector.norms[a]}});
  }
  return {{"qx", sector.qx}, {"qy", sector.qy}, {"dim", sector.dim()}, {"representatives", reps}};
}

}  // namespace hexgauge
