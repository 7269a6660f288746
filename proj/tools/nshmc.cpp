#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nshmc/errors.hpp"
#include "nshmc/experiments.hpp"
#include "nshmc/manifest.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

int execute(const std::string& command, const nlohmann::json& params, const fs::path& out) {
  const nshmc::RunOutcome outcome = nshmc::run_command(command, params, out);
  std::cout << outcome.summary;
  std::cout << "manifest: " << nshmc::manifest_path(command, out).generic_string() << '\n';
  return kExitOk;
}

int replay(const fs::path& manifest_file, const std::string& out_override, bool check) {
  const nshmc::RunManifest recorded = nshmc::read_manifest(manifest_file);
  const fs::path out = out_override.empty() ? fs::path(recorded.out) : fs::path(out_override);
  const nshmc::RunOutcome outcome = nshmc::run_command(recorded.command, recorded.params, out);
  std::cout << outcome.summary;
  if (!check) return kExitOk;
  const auto differing = nshmc::compare_outputs(recorded, outcome.manifest);
  if (differing.empty()) {
    std::cout << "replay: all " << recorded.outputs.size() << " outputs identical\n";
    return kExitOk;
  }
  for (const auto& path : differing) std::cerr << "replay: output differs: " << path << '\n';
  return kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-smooth Hamiltonian Monte Carlo experiments"};
  app.require_subcommand(1);

  std::string out_dir;
  std::string command;
  nlohmann::json params;

  nshmc::Exp1Params e1;
  auto* exp1 = app.add_subcommand("exp1", "1-D generalized Gaussian: histogram MSE and ACF per sampler");
  exp1->add_option("--p", e1.p, "shape p >= 1")->capture_default_str();
  exp1->add_option("--gamma,--lambda", e1.gamma, "scale > 0")->capture_default_str();
  exp1->add_option("-n,--iterations", e1.iterations)->capture_default_str();
  exp1->add_option("--burn-in", e1.burn_in)->capture_default_str();
  exp1->add_option("--eps", e1.epsilon, "ns-HMC step size")->capture_default_str();
  exp1->add_option("--lf", e1.steps, "leapfrog steps per trajectory")->capture_default_str();
  exp1->add_option("--rw-std", e1.rw_std)->capture_default_str();
  exp1->add_option("--mh-std", e1.mh_std)->capture_default_str();
  exp1->add_option("--checkpoint", e1.checkpoint, "MSE curve spacing")->capture_default_str();
  exp1->add_option("--max-lag", e1.max_lag)->capture_default_str();
  exp1->add_option("--seed", e1.seed)->capture_default_str();
  exp1->add_option("--out-dir", out_dir)->default_val("exp1_out");

  nshmc::Exp2Params e2;
  auto* exp2 = app.add_subcommand("exp2", "multivariate generalized Gaussian: iterations to threshold");
  exp2->add_option("--dim", e2.dimension, "2, 3 or 4")->capture_default_str();
  exp2->add_option("--p", e2.p)->capture_default_str();
  exp2->add_option("--gamma,--lambda", e2.gamma)->capture_default_str();
  exp2->add_option("-n,--iterations", e2.iterations)->capture_default_str();
  exp2->add_option("--eps", e2.epsilon)->capture_default_str();
  exp2->add_option("--lf", e2.steps)->capture_default_str();
  exp2->add_option("--rw-std", e2.rw_std)->capture_default_str();
  exp2->add_option("--bins", e2.bins, "histogram bins per axis on [-5, 5]")->capture_default_str();
  exp2->add_option("--reference-samples", e2.reference_samples)->capture_default_str();
  exp2->add_option("--reference-count", e2.reference_count,
                   "threshold is twice the expected direct-sampler MSE at this count")
      ->capture_default_str();
  exp2->add_option("--checkpoint", e2.checkpoint)->capture_default_str();
  exp2->add_option("--seed", e2.seed)->capture_default_str();
  exp2->add_option("--out-dir", out_dir)->default_val("exp2_out");

  nshmc::Exp3Params e3;
  bool synthetic = false;
  auto* exp3 = app.add_subcommand("exp3", "Bayesian wavelet denoising with a Gibbs sampler");
  auto* input_opt = exp3->add_option("--input", e3.input, "clean binary PGM (P5) image");
  exp3->add_flag("--synthetic", synthetic, "use the built-in piecewise-constant scene (default)")
      ->excludes(input_opt);
  exp3->add_option("--size", e3.synthetic_size, "synthetic scene size")->capture_default_str();
  exp3->add_option("--amplitude", e3.synthetic_amplitude, "synthetic scene peak intensity")
      ->capture_default_str();
  exp3->add_option("--noise-var", e3.noise_var)->capture_default_str();
  exp3->add_option("-n,--iterations", e3.iterations)->capture_default_str();
  exp3->add_option("--burn-in", e3.burn_in)->capture_default_str();
  exp3->add_option("--eps", e3.epsilon)->capture_default_str();
  exp3->add_option("--lf", e3.steps)->capture_default_str();
  exp3->add_option("--scheme", e3.scheme, "1 (subgradient) or 2 (proximal)")->capture_default_str();
  exp3->add_option("--levels", e3.levels, "Haar decomposition levels")->capture_default_str();
  exp3->add_option("--seed", e3.seed)->capture_default_str();
  exp3->add_option("--out-dir", out_dir)->default_val("exp3_out");

  nshmc::SampleParams sp;
  std::string sample_out;
  auto* sample = app.add_subcommand("sample", "sample a built-in target and write the chain as CSV");
  sample->add_option("--target", sp.target, "e.g. gg:p=1,gamma=1,dim=1")->capture_default_str();
  sample->add_option("--sampler", sp.sampler, "nshmc1|nshmc2[:eps=..,lf=..] or rwmh|mh[:std=..]")
      ->capture_default_str();
  sample->add_option("-n,--iterations", sp.iterations)->capture_default_str();
  sample->add_option("--burn-in", sp.burn_in)->capture_default_str();
  sample->add_option("--seed", sp.seed)->capture_default_str();
  sample->add_option("-o,--out", sample_out)->default_val("chain.csv");

  std::string manifest_file;
  std::string replay_out;
  bool check = false;
  auto* rep = app.add_subcommand("replay", "re-run a command from its manifest");
  rep->add_option("manifest", manifest_file, "manifest.json written by a previous run")->required();
  rep->add_option("--out", replay_out, "output location (default: the recorded one)");
  rep->add_flag("--check", check, "compare output digests with the manifest; exit 4 on mismatch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*exp1) return execute("exp1", e1, out_dir);
    if (*exp2) return execute("exp2", e2, out_dir);
    if (*exp3) {
      if (synthetic) e3.input.clear();
      return execute("exp3", e3, out_dir);
    }
    if (*sample) return execute("sample", sp, sample_out);
    if (*rep) return replay(manifest_file, replay_out, check);
  } catch (const nshmc::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nshmc::PgmParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitIo;
  } catch (const nshmc::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
