#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "catlab/harness/config.hpp"

namespace catlab::harness {

inline constexpr const char* kToolVersion = "0.1.0";

/// Lower-case hex SHA-256 of a byte string.
inline std::string sha256_hex(const std::string& data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

struct OutputFile {
  std::string name;
  std::string content;
};

struct ManifestEntry {
  std::string file;
  std::string sha256;
  std::size_t bytes = 0;
};

struct RunManifest {
  std::string command;
  RunConfig config;
  double t_pi = 0.0;
  double lambda_cl = 0.0;
  double z_c0 = 0.0;
  std::vector<ManifestEntry> outputs;
  std::vector<std::string> notes;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["tool"] = "catlab";
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["config"] = harness::to_json(config);
    j["sign_convention"] = to_string(config.sign);
    j["normalization"] = to_string(config.normalization);
    j["thermal_state"] = "rho = exp(+beta J(acos z, phi)) / Z, beta in units of 1/epsilon_tau";
    j["tolerances"] = {
        {"hermiticity", DensityMatrix::kHermitianTol},
        {"trace", DensityMatrix::kTraceTol},
        {"positivity", DensityMatrix::kPositivityTol},
        {"qfi_pair_cutoff", kQfiPairCutoff},
        {"cfi_bin_cutoff", kCfiBinCutoff},
        {"energy_drift", classical::kEnergyDriftTol},
        {"report_slack", kReportSlack},
    };
    j["derived"] = {{"t_pi", t_pi}, {"lambda_cl", lambda_cl}, {"z_c0", z_c0}};
    nlohmann::json files = nlohmann::json::array();
    for (const auto& e : outputs) files.push_back({{"file", e.file}, {"sha256", e.sha256}, {"bytes", e.bytes}});
    j["outputs"] = files;
    j["notes"] = notes;
    return j;
  }
};

/// Derived quantities of a configuration.
inline RunManifest make_manifest(const std::string& command, const RunConfig& config) {
  RunManifest m;
  m.command = command;
  m.config = config;
  const TwistTurnParams params = config.dynamics();
  m.t_pi = t_pi(params.space, config.u_int);
  m.lambda_cl = params.mean_field().lambda_cl;
  m.z_c0 = m.lambda_cl > 1.0 ? classical::separatrix(0.0, params.mean_field()) : 0.0;
  return m;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

/// Write every output into the config's directory, then manifest.json.
inline RunManifest emit(RunManifest manifest, const std::vector<OutputFile>& files) {
  const std::filesystem::path dir(manifest.config.out_dir);
  std::filesystem::create_directories(dir);
  for (const auto& f : files) {
    write_file(dir / f.name, f.content);
    manifest.outputs.push_back({f.name, sha256_hex(f.content), f.content.size()});
  }
  write_file(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
  return manifest;
}

}  // namespace catlab::harness
