#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace nshmc {

namespace fs = std::filesystem;

struct ManifestOutput {
  std::string path;      ///< relative to the manifest's directory
  std::string digest;    ///< FNV-1a 64-bit, 16 hex digits
  std::uintmax_t bytes = 0;
};

/// Record written next to every run's outputs. Replaying `command` with
/// `params` reproduces every listed output byte for byte.
struct RunManifest {
  std::string command;   ///< exp1 | exp2 | exp3 | sample
  nlohmann::json params;
  std::uint64_t seed = 0;
  std::string out;       ///< output directory, or the CSV path for `sample`
  std::vector<ManifestOutput> outputs;
  double duration_seconds = 0.0;
};

void to_json(nlohmann::json& j, const ManifestOutput& o);
void from_json(const nlohmann::json& j, ManifestOutput& o);
void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);

std::string file_digest(const fs::path& path);

void write_manifest(const RunManifest& manifest, const fs::path& path);

/// Throws IoError when unreadable, UsageError when the JSON is malformed or incomplete.
RunManifest read_manifest(const fs::path& path);

/// Where a command's manifest lives: <dir>/manifest.json for experiments,
/// <file>.manifest.json for `sample`.
fs::path manifest_path(const std::string& command, const fs::path& out);

struct RunOutcome {
  RunManifest manifest;
  std::string summary;   ///< short human-readable report, one item per line
};

/// Runs `command` with `params` (the JSON form of the matching *Params
/// struct), writes its outputs under `out` (a directory, or the CSV path for
/// `sample`) and the manifest beside them.
RunOutcome run_command(const std::string& command, const nlohmann::json& params, const fs::path& out);

/// Outputs whose digest differs between a recorded manifest and a replay.
std::vector<std::string> compare_outputs(const RunManifest& recorded, const RunManifest& replayed);

}  // namespace nshmc
