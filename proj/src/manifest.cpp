#include "nshmc/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nshmc/errors.hpp"
#include "nshmc/experiments.hpp"

namespace nshmc {

void to_json(nlohmann::json& j, const ManifestOutput& o) {
  j = {{"path", o.path}, {"digest", o.digest}, {"bytes", o.bytes}};
}

void from_json(const nlohmann::json& j, ManifestOutput& o) {
  j.at("path").get_to(o.path);
  j.at("digest").get_to(o.digest);
  j.at("bytes").get_to(o.bytes);
}

void to_json(nlohmann::json& j, const RunManifest& m) {
  j = {{"command", m.command},
       {"params", m.params},
       {"seed", m.seed},
       {"out", m.out},
       {"outputs", m.outputs},
       {"duration_seconds", m.duration_seconds}};
}

void from_json(const nlohmann::json& j, RunManifest& m) {
  j.at("command").get_to(m.command);
  m.params = j.at("params");
  j.at("seed").get_to(m.seed);
  j.at("out").get_to(m.out);
  j.at("outputs").get_to(m.outputs);
  j.at("duration_seconds").get_to(m.duration_seconds);
}

std::string file_digest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

void write_manifest(const RunManifest& manifest, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << nlohmann::json(manifest).dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

RunManifest read_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in).get<RunManifest>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("invalid manifest " + path.string() + ": " + e.what());
  }
}

fs::path manifest_path(const std::string& command, const fs::path& out) {
  if (command == "sample") return fs::path(out.string() + ".manifest.json");
  return out / "manifest.json";
}

namespace {

template <typename Params>
Params params_from(const nlohmann::json& j) {
  try {
    return j.get<Params>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("invalid parameters: ") + e.what());
  }
}

std::string line(const std::string& key, double value) { return key + ": " + format_real(value) + "\n"; }

}  // namespace

RunOutcome run_command(const std::string& command, const nlohmann::json& params, const fs::path& out) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome outcome;
  RunManifest& manifest = outcome.manifest;
  manifest.command = command;
  manifest.out = out.generic_string();

  std::vector<fs::path> written;
  fs::path base = out;
  std::ostringstream summary;
  if (command == "exp1") {
    const auto p = params_from<Exp1Params>(params);
    const Exp1Result r = exp1_compute(p);
    written = write_exp1(r, out);
    manifest.params = p;
    manifest.seed = p.seed;
    for (std::size_t s = 0; s < r.samplers.size(); ++s)
      summary << r.samplers[s] << ": acceptance " << format_real(r.acceptance[s]) << ", final mse "
              << format_real(r.mse[s].back()) << ", ks " << format_real(r.ks[s]) << '\n';
  } else if (command == "exp2") {
    const auto p = params_from<Exp2Params>(params);
    const Exp2Result r = exp2_compute(p);
    written = write_exp2(r, out);
    manifest.params = p;
    manifest.seed = p.seed;
    summary << line("threshold", r.threshold);
    for (std::size_t s = 0; s < r.samplers.size(); ++s)
      summary << r.samplers[s] << ": iterations to threshold " << r.converged_at[s]
              << (r.converged[s] ? "" : " (not reached)") << '\n';
  } else if (command == "exp3") {
    const auto p = params_from<Exp3Params>(params);
    const Exp3Result r = exp3_compute(p);
    written = write_exp3(r, out);
    manifest.params = p;
    manifest.seed = p.seed;
    summary << line("snr noisy (dB)", r.snr_noisy) << line("snr denoised (dB)", r.snr_denoised)
            << line("ssim noisy", r.ssim_noisy) << line("ssim denoised", r.ssim_denoised)
            << line("acceptance", r.denoised.acceptance_rate());
  } else if (command == "sample") {
    const auto p = params_from<SampleParams>(params);
    const SampleResult r = sample_compute(p);
    written = write_sample(r, out);
    base = out.has_parent_path() ? out.parent_path() : fs::path(".");
    manifest.params = p;
    manifest.seed = p.seed;
    summary << line("acceptance rate", r.acceptance) << line("lag-1 acf", r.lag1_acf);
  } else {
    throw UsageError("unknown command '" + command + "'; valid commands: exp1, exp2, exp3, sample");
  }

  for (const fs::path& rel : written) {
    const fs::path full = base / rel;
    manifest.outputs.push_back({rel.generic_string(), file_digest(full), fs::file_size(full)});
  }
  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(manifest, manifest_path(command, out));
  outcome.summary = summary.str();
  return outcome;
}

std::vector<std::string> compare_outputs(const RunManifest& recorded, const RunManifest& replayed) {
  // Outputs are listed in a fixed order per command; a replayed `sample` may
  // use a different file name, so entries are matched by position.
  std::vector<std::string> differing;
  for (std::size_t i = 0; i < recorded.outputs.size(); ++i) {
    const ManifestOutput& a = recorded.outputs[i];
    const bool same = i < replayed.outputs.size() && replayed.outputs[i].digest == a.digest &&
                      replayed.outputs[i].bytes == a.bytes;
    if (!same) differing.push_back(a.path);
  }
  return differing;
}

}  // namespace nshmc
