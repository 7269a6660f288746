#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nshmc/denoise.hpp"
#include "nshmc/diagnostics.hpp"
#include "nshmc/model.hpp"
#include "nshmc/sample.hpp"

namespace nshmc {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Target and sampler specifications ("gg:p=1,gamma=1", "nshmc2:eps=0.05,lf=10")

struct TargetSpec {
  GGParams gg;
  std::size_t dimension = 1;
};

/// Parses "gg[:key=value,...]" with keys p, gamma, dim. Throws UsageError
/// listing the valid forms on anything else.
TargetSpec parse_target(const std::string& text);
std::string format_target(const TargetSpec& target);

struct SamplerSpec {
  SamplerKind kind = NsHmcScheme2{};
  std::optional<LeapfrogConfig> leapfrog = LeapfrogConfig{};
};

/// Parses "nshmc1|nshmc2[:eps=..,lf=..]" or "rwmh|mh[:std=..]".
SamplerSpec parse_sampler(const std::string& text);
std::string format_sampler(const SamplerSpec& sampler);

/// Writes doubles with 17 significant digits; infinities as "inf" / "-inf".
std::string format_real(double value);

// ---------------------------------------------------------------------------
// Experiment 1: 1-D GG, histogram MSE and ACF for ns-HMC, rw-MH and MH.

struct Exp1Params {
  double p = 1.0;
  double gamma = 1.0;
  std::size_t iterations = 20000;
  std::size_t burn_in = 0;
  double epsilon = 0.2;
  std::size_t steps = 10;
  double rw_std = 1.0;
  double mh_std = 1.0;
  std::size_t checkpoint = 100;
  std::size_t max_lag = 50;
  std::uint64_t seed = 1;

  void validate() const;
};

struct Exp1Result {
  std::vector<std::string> samplers;          ///< nshmc2, rwmh, mh
  std::vector<std::size_t> checkpoints;       ///< sample counts of the MSE curve
  std::vector<std::vector<double>> mse;       ///< [sampler][checkpoint]
  std::vector<std::vector<double>> acf;       ///< [sampler][lag], lags 0..max_lag
  std::vector<double> acceptance;             ///< per sampler
  std::vector<double> ks;                     ///< KS statistic of post-burn-in samples
};

Exp1Result exp1_compute(const Exp1Params& params);

// ---------------------------------------------------------------------------
// Experiment 2: multivariate GG, iterations until the histogram MSE settles
// below a level set by the direct sampler.

struct Exp2Params {
  std::size_t dimension = 2;
  double p = 1.0;
  double gamma = 1.0;
  std::size_t iterations = 10000;
  double epsilon = 0.2;
  std::size_t steps = 10;
  double rw_std = 1.0;
  std::size_t bins = 10;                      ///< per axis, on [-5, 5]
  std::size_t reference_samples = 1000000;    ///< direct draws for the ground-truth histogram
  std::size_t reference_count = 500;          ///< threshold = 2 x expected direct MSE at this count
  std::size_t checkpoint = 50;
  std::uint64_t seed = 1;

  void validate() const;
};

struct Exp2Result {
  std::vector<std::string> samplers;          ///< nshmc2, rwmh
  std::vector<std::size_t> checkpoints;
  std::vector<std::vector<double>> mse;       ///< [sampler][checkpoint]
  std::vector<double> floor;                  ///< expected direct-sampler MSE per checkpoint
  double threshold = 0.0;
  std::vector<std::size_t> converged_at;      ///< per sampler; == iterations when never reached
  std::vector<bool> converged;
  std::vector<double> acceptance;

  /// converged_at(rw-MH) - converged_at(ns-HMC).
  long long gap() const;
};

/// Expected histogram MSE of n exact draws against a reference histogram,
/// from the reference cell frequencies.
double expected_direct_mse(const Histogram& reference, std::size_t n);

/// First checkpoint index after which every later value stays below
/// `threshold`; nullopt when the last value is not below it.
std::optional<std::size_t> settle_index(const std::vector<double>& curve, double threshold);

Exp2Result exp2_compute(const Exp2Params& params);

// ---------------------------------------------------------------------------
// Experiment 3: Gibbs denoising.

struct Exp3Params {
  std::string input;                 ///< PGM path; empty selects the synthetic scene
  std::size_t synthetic_size = 64;
  double synthetic_amplitude = 25.0;
  double noise_var = 40.0;
  std::size_t iterations = 1000;
  std::size_t burn_in = 500;
  double epsilon = 0.1;
  std::size_t steps = 10;
  int scheme = 2;
  std::size_t levels = 3;
  std::uint64_t seed = 1;

  void validate() const;
};

struct Exp3Result {
  Image clean;
  Image noisy;
  DenoiseResult denoised;
  double snr_noisy = 0.0;
  double snr_denoised = 0.0;
  double ssim_noisy = 0.0;
  double ssim_denoised = 0.0;
};

Exp3Result exp3_compute(const Exp3Params& params);

// ---------------------------------------------------------------------------
// Generic sampling.

struct SampleParams {
  std::string target = "gg:p=1,gamma=1";
  std::string sampler = "nshmc2:eps=0.05,lf=10";
  std::size_t iterations = 1000;
  std::size_t burn_in = 0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct SampleResult {
  TargetSpec target;
  SamplerConfig config;
  ChainRecord chain;
  double acceptance = 0.0;
  double lag1_acf = 0.0;   ///< of coordinate 0 after burn-in; NaN for a constant chain
};

SampleResult sample_compute(const SampleParams& params);

// ---------------------------------------------------------------------------
// Artifact writers. Each returns the files it wrote, relative to `out`.

std::vector<fs::path> write_exp1(const Exp1Result& result, const fs::path& out_dir);
std::vector<fs::path> write_exp2(const Exp2Result& result, const fs::path& out_dir);
std::vector<fs::path> write_exp3(const Exp3Result& result, const fs::path& out_dir);
std::vector<fs::path> write_sample(const SampleResult& result, const fs::path& out_file);

void to_json(nlohmann::json& j, const Exp1Params& p);
void from_json(const nlohmann::json& j, Exp1Params& p);
void to_json(nlohmann::json& j, const Exp2Params& p);
void from_json(const nlohmann::json& j, Exp2Params& p);
void to_json(nlohmann::json& j, const Exp3Params& p);
void from_json(const nlohmann::json& j, Exp3Params& p);
void to_json(nlohmann::json& j, const SampleParams& p);
void from_json(const nlohmann::json& j, SampleParams& p);

}  // namespace nshmc
