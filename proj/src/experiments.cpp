#include "nshmc/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "nshmc/errors.hpp"

namespace nshmc {

namespace {

constexpr const char* kValidTargets = "valid targets: gg[:p=<real >= 1>,gamma=<real > 0>,dim=<int >= 1>]";
constexpr const char* kValidSamplers =
    "valid samplers: nshmc1[:eps=<real >= 0>,lf=<int >= 1>], nshmc2[:eps=..,lf=..], "
    "rwmh[:std=<real > 0>], mh[:std=<real > 0>]";

// Seed streams derived from the master seed.
enum Stream : std::uint64_t { kReference = 0, kNsHmc = 1, kRwMh = 2, kIndepMh = 3, kNoise = 4 };

struct ParsedSpec {
  std::string name;
  std::map<std::string, std::string> options;
};

ParsedSpec split_spec(const std::string& text, const char* valid) {
  ParsedSpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (colon == std::string::npos) return spec;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw UsageError("malformed option '" + item + "' in '" + text + "'; " + valid);
    const std::string key = item.substr(0, eq);
    if (spec.options.count(key)) throw UsageError("duplicate option '" + key + "'; " + valid);
    spec.options[key] = item.substr(eq + 1);
  }
  return spec;
}

double parse_real(const std::string& key, const std::string& value, const char* valid) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out))
    throw UsageError("option " + key + "='" + value + "' is not a finite number; " + valid);
  return out;
}

std::size_t parse_count(const std::string& key, const std::string& value, const char* valid) {
  std::size_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw UsageError("option " + key + "='" + value + "' is not a non-negative integer; " + valid);
  return out;
}

void reject_unknown(const ParsedSpec& spec, std::initializer_list<const char*> known,
                    const char* valid) {
  for (const auto& [key, value] : spec.options) {
    const bool ok = std::any_of(known.begin(), known.end(), [&](const char* k) { return key == k; });
    if (!ok) throw UsageError("unknown option '" + key + "' for '" + spec.name + "'; " + valid);
  }
}

// Re-throws parameter-domain failures from the core as usage errors.
template <typename F>
void as_usage(F&& check) {
  try {
    check();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::vector<std::size_t> checkpoint_grid(std::size_t iterations, std::size_t every) {
  std::vector<std::size_t> grid;
  for (std::size_t n = every; n <= iterations; n += every) grid.push_back(n);
  if (grid.empty() || grid.back() != iterations) grid.push_back(iterations);
  return grid;
}

}  // namespace

// ---------------------------------------------------------------------------

TargetSpec parse_target(const std::string& text) {
  const ParsedSpec spec = split_spec(text, kValidTargets);
  if (spec.name != "gg") throw UsageError("unknown target '" + spec.name + "'; " + kValidTargets);
  reject_unknown(spec, {"p", "gamma", "dim"}, kValidTargets);
  TargetSpec target;
  if (auto it = spec.options.find("p"); it != spec.options.end())
    target.gg.p = parse_real("p", it->second, kValidTargets);
  if (auto it = spec.options.find("gamma"); it != spec.options.end())
    target.gg.gamma = parse_real("gamma", it->second, kValidTargets);
  if (auto it = spec.options.find("dim"); it != spec.options.end())
    target.dimension = parse_count("dim", it->second, kValidTargets);
  as_usage([&] { target.gg.validate(); });
  require(target.dimension >= 1, std::string("dim must be at least 1; ") + kValidTargets);
  return target;
}

std::string format_target(const TargetSpec& target) {
  return "gg:p=" + format_real(target.gg.p) + ",gamma=" + format_real(target.gg.gamma) +
         ",dim=" + std::to_string(target.dimension);
}

SamplerSpec parse_sampler(const std::string& text) {
  const ParsedSpec spec = split_spec(text, kValidSamplers);
  SamplerSpec out;
  if (spec.name == "nshmc1" || spec.name == "nshmc2") {
    reject_unknown(spec, {"eps", "lf"}, kValidSamplers);
    out.kind = spec.name == "nshmc1" ? SamplerKind{NsHmcScheme1{}} : SamplerKind{NsHmcScheme2{}};
    LeapfrogConfig lf;
    if (auto it = spec.options.find("eps"); it != spec.options.end())
      lf.epsilon = parse_real("eps", it->second, kValidSamplers);
    if (auto it = spec.options.find("lf"); it != spec.options.end())
      lf.steps = parse_count("lf", it->second, kValidSamplers);
    as_usage([&] { lf.validate(); });
    out.leapfrog = lf;
  } else if (spec.name == "rwmh" || spec.name == "mh") {
    reject_unknown(spec, {"std"}, kValidSamplers);
    double sd = 1.0;
    if (auto it = spec.options.find("std"); it != spec.options.end())
      sd = parse_real("std", it->second, kValidSamplers);
    require(sd > 0.0, std::string("std must be positive; ") + kValidSamplers);
    out.kind = spec.name == "rwmh" ? SamplerKind{RwMh{sd}} : SamplerKind{IndepMh{sd}};
    out.leapfrog.reset();
  } else {
    throw UsageError("unknown sampler '" + spec.name + "'; " + kValidSamplers);
  }
  return out;
}

std::string format_sampler(const SamplerSpec& sampler) {
  std::string out = sampler_name(sampler.kind);
  if (sampler.leapfrog)
    return out + ":eps=" + format_real(sampler.leapfrog->epsilon) +
           ",lf=" + std::to_string(sampler.leapfrog->steps);
  if (const auto* rw = std::get_if<RwMh>(&sampler.kind)) return out + ":std=" + format_real(rw->proposal_std);
  if (const auto* mh = std::get_if<IndepMh>(&sampler.kind)) return out + ":std=" + format_real(mh->proposal_std);
  return out;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------

void Exp1Params::validate() const {
  as_usage([&] { GGParams{gamma, p}.validate(); });
  require(iterations >= 2, "exp1: iterations must be at least 2");
  require(burn_in < iterations, "exp1: burn-in must be smaller than iterations");
  as_usage([&] { LeapfrogConfig{epsilon, steps}.validate(); });
  require(rw_std > 0.0 && std::isfinite(rw_std), "exp1: rw-MH std must be positive");
  require(mh_std > 0.0 && std::isfinite(mh_std), "exp1: MH std must be positive");
  require(checkpoint >= 1, "exp1: checkpoint spacing must be positive");
  require(max_lag >= 1 && max_lag < iterations - burn_in, "exp1: max lag must be in [1, kept samples)");
}

Exp1Result exp1_compute(const Exp1Params& params) {
  params.validate();
  const GGParams gg{params.gamma, params.p};
  const PotentialEnergy energy = gg_energy(gg, 1);
  const std::vector<double> x0{0.0};
  const auto pdf = [&](double x) { return gg_density(x, gg); };
  const auto cdf = [&](double x) { return gg_cdf(x, gg); };

  const std::vector<SamplerConfig> configs{
      SamplerConfig::nshmc(NsHmcScheme2{}, LeapfrogConfig{params.epsilon, params.steps},
                           params.iterations, params.burn_in, Rng::derive_seed(params.seed, kNsHmc)),
      SamplerConfig::metropolis(RwMh{params.rw_std}, params.iterations, params.burn_in,
                                Rng::derive_seed(params.seed, kRwMh)),
      SamplerConfig::metropolis(IndepMh{params.mh_std}, params.iterations, params.burn_in,
                                Rng::derive_seed(params.seed, kIndepMh)),
  };

  Exp1Result result;
  result.checkpoints = checkpoint_grid(params.iterations, params.checkpoint);
  for (const SamplerConfig& config : configs) {
    const ChainRecord chain = run_chain(x0, energy, config);
    result.samplers.push_back(sampler_name(config.kind));
    result.acceptance.push_back(chain.acceptance_rate());

    Histogram hist(HistogramSpec{});
    std::vector<double> curve;
    std::size_t next = 0;
    for (std::size_t i = 0; i < chain.rows(); ++i) {
      hist.add(chain.row(i)[0]);
      if (next < result.checkpoints.size() && i + 1 == result.checkpoints[next]) {
        curve.push_back(hist.in_range() > 0 ? hist.mse_against(pdf)
                                            : std::numeric_limits<double>::quiet_NaN());
        ++next;
      }
    }
    result.mse.push_back(std::move(curve));

    const std::vector<double> kept = chain.coordinate(0, params.burn_in);
    try {
      result.acf.push_back(acf(kept, params.max_lag));
    } catch (const DegenerateInputError&) {
      result.acf.emplace_back(params.max_lag + 1, std::numeric_limits<double>::quiet_NaN());
    }
    result.ks.push_back(ks_statistic(kept, cdf));
  }
  return result;
}

// ---------------------------------------------------------------------------

void Exp2Params::validate() const {
  require(dimension >= 2 && dimension <= 4, "exp2: dimension must be 2, 3 or 4");
  as_usage([&] { GGParams{gamma, p}.validate(); });
  require(iterations >= 1, "exp2: iterations must be positive");
  as_usage([&] { LeapfrogConfig{epsilon, steps}.validate(); });
  require(rw_std > 0.0 && std::isfinite(rw_std), "exp2: rw-MH std must be positive");
  require(bins >= 2 && bins <= 64, "exp2: bins per axis must be in [2, 64]");
  require(reference_samples >= 1, "exp2: reference sample count must be positive");
  require(reference_count >= 1, "exp2: reference count must be positive");
  require(checkpoint >= 1, "exp2: checkpoint spacing must be positive");
}

long long Exp2Result::gap() const {
  return static_cast<long long>(converged_at.at(1)) - static_cast<long long>(converged_at.at(0));
}

double expected_direct_mse(const Histogram& reference, std::size_t n) {
  if (n == 0) throw DomainError("expected_direct_mse: n must be positive");
  if (reference.total() == 0) throw DegenerateInputError("expected_direct_mse: empty reference");
  const double total = static_cast<double>(reference.total());
  const double volume = std::pow(reference.spec().width(), static_cast<double>(reference.dimension()));
  double spread = 0.0;
  for (std::size_t c = 0; c < reference.cells(); ++c) {
    const double q = static_cast<double>(reference.count(c)) / total;
    spread += q * (1.0 - q);
  }
  return spread / (static_cast<double>(n) * volume * volume * static_cast<double>(reference.cells()));
}

std::optional<std::size_t> settle_index(const std::vector<double>& curve, double threshold) {
  std::optional<std::size_t> first;
  for (std::size_t j = curve.size(); j-- > 0;) {
    if (!(curve[j] < threshold)) break;
    first = j;
  }
  return first;
}

Exp2Result exp2_compute(const Exp2Params& params) {
  params.validate();
  const GGParams gg{params.gamma, params.p};
  const std::size_t dim = params.dimension;
  const PotentialEnergy energy = gg_energy(gg, dim);
  const HistogramSpec spec{-5.0, 5.0, params.bins};

  Histogram reference(spec, dim);
  {
    Rng rng(Rng::derive_seed(params.seed, kReference));
    std::vector<double> point(dim);
    for (std::size_t i = 0; i < params.reference_samples; ++i) {
      for (double& v : point) v = gg_direct_sample(gg, rng);
      reference.add(point);
    }
  }

  Exp2Result result;
  result.checkpoints = checkpoint_grid(params.iterations, params.checkpoint);
  result.threshold = 2.0 * expected_direct_mse(reference, params.reference_count);
  for (std::size_t n : result.checkpoints) result.floor.push_back(expected_direct_mse(reference, n));

  const std::vector<double> x0(dim, 0.0);
  const std::vector<SamplerConfig> configs{
      SamplerConfig::nshmc(NsHmcScheme2{}, LeapfrogConfig{params.epsilon, params.steps},
                           params.iterations, 0, Rng::derive_seed(params.seed, kNsHmc)),
      SamplerConfig::metropolis(RwMh{params.rw_std}, params.iterations, 0,
                                Rng::derive_seed(params.seed, kRwMh)),
  };
  for (const SamplerConfig& config : configs) {
    const ChainRecord chain = run_chain(x0, energy, config);
    result.samplers.push_back(sampler_name(config.kind));
    result.acceptance.push_back(chain.acceptance_rate());

    Histogram hist(spec, dim);
    std::vector<double> curve;
    std::size_t next = 0;
    for (std::size_t i = 0; i < chain.rows(); ++i) {
      hist.add(chain.row(i));
      if (next < result.checkpoints.size() && i + 1 == result.checkpoints[next]) {
        curve.push_back(hist.in_range() > 0 ? hist.mse_against(reference)
                                            : std::numeric_limits<double>::infinity());
        ++next;
      }
    }
    const auto settled = settle_index(curve, result.threshold);
    result.converged.push_back(settled.has_value());
    result.converged_at.push_back(settled ? result.checkpoints[*settled] : params.iterations);
    result.mse.push_back(std::move(curve));
  }
  return result;
}

// ---------------------------------------------------------------------------

void Exp3Params::validate() const {
  require(noise_var >= 0.0 && std::isfinite(noise_var), "exp3: noise variance must be non-negative");
  require(iterations >= 1, "exp3: iterations must be positive");
  require(burn_in < iterations, "exp3: burn-in must be smaller than iterations");
  as_usage([&] { LeapfrogConfig{epsilon, steps}.validate(); });
  require(scheme == 1 || scheme == 2, "exp3: scheme must be 1 or 2");
  require(levels >= 1, "exp3: levels must be positive");
  if (input.empty()) {
    require(synthetic_size >= 16, "exp3: synthetic size must be at least 16");
    require(synthetic_amplitude > 0.0 && std::isfinite(synthetic_amplitude),
            "exp3: synthetic amplitude must be positive");
  }
}

Exp3Result exp3_compute(const Exp3Params& params) {
  params.validate();
  Exp3Result result;
  result.clean = params.input.empty()
                     ? synthetic_piecewise_constant(params.synthetic_size, params.synthetic_amplitude)
                     : pgm_read(params.input);
  if (params.levels > WaveletOperator::max_levels(result.clean.width, result.clean.height))
    throw UsageError("exp3: a " + std::to_string(result.clean.width) + "x" +
                     std::to_string(result.clean.height) + " image does not support " +
                     std::to_string(params.levels) + " wavelet levels");
  Rng noise_rng(Rng::derive_seed(params.seed, kNoise));
  result.noisy = add_gaussian_noise(result.clean, params.noise_var, noise_rng);

  const DenoiseModel model(result.noisy, params.levels);
  const SamplerKind kind = params.scheme == 1 ? SamplerKind{NsHmcScheme1{}} : SamplerKind{NsHmcScheme2{}};
  const SamplerConfig config =
      SamplerConfig::nshmc(kind, LeapfrogConfig{params.epsilon, params.steps}, params.iterations,
                           params.burn_in, Rng::derive_seed(params.seed, kNsHmc));
  result.denoised = gibbs_denoise_run(model, config);
  result.snr_noisy = snr(result.clean, result.noisy);
  result.snr_denoised = snr(result.clean, result.denoised.estimate);
  result.ssim_noisy = ssim(result.clean, result.noisy);
  result.ssim_denoised = ssim(result.clean, result.denoised.estimate);
  return result;
}

// ---------------------------------------------------------------------------

void SampleParams::validate() const {
  require(iterations >= 1, "sample: iterations must be positive");
  require(burn_in < iterations, "sample: burn-in must be smaller than iterations");
}

SampleResult sample_compute(const SampleParams& params) {
  params.validate();
  SampleResult result;
  result.target = parse_target(params.target);
  const SamplerSpec sampler = parse_sampler(params.sampler);
  result.config.kind = sampler.kind;
  result.config.leapfrog = sampler.leapfrog;
  result.config.iterations = params.iterations;
  result.config.burn_in = params.burn_in;
  result.config.seed = params.seed;

  const PotentialEnergy energy = gg_energy(result.target.gg, result.target.dimension);
  const std::vector<double> x0(result.target.dimension, 0.0);
  result.chain = run_chain(x0, energy, result.config);

  std::size_t kept_accepts = 0;
  for (std::size_t i = params.burn_in; i < result.chain.rows(); ++i) kept_accepts += result.chain.accepted()[i];
  const std::size_t kept = result.chain.rows() - params.burn_in;
  result.acceptance = static_cast<double>(kept_accepts) / static_cast<double>(kept);
  result.lag1_acf = std::numeric_limits<double>::quiet_NaN();
  if (kept >= 2) {
    try {
      result.lag1_acf = acf(result.chain.coordinate(0, params.burn_in), 1)[1];
    } catch (const DegenerateInputError&) {
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

std::vector<fs::path> write_exp1(const Exp1Result& result, const fs::path& out_dir) {
  ensure_dir(out_dir);
  {
    const fs::path path = out_dir / "mse_curve.csv";
    auto out = open_csv(path);
    out << "iteration";
    for (const auto& name : result.samplers) out << ',' << name;
    out << '\n';
    for (std::size_t j = 0; j < result.checkpoints.size(); ++j) {
      out << result.checkpoints[j];
      for (const auto& curve : result.mse) out << ',' << format_real(curve[j]);
      out << '\n';
    }
    finish(out, path);
  }
  {
    const fs::path path = out_dir / "acf.csv";
    auto out = open_csv(path);
    out << "lag";
    for (const auto& name : result.samplers) out << ',' << name;
    out << '\n';
    for (std::size_t k = 0; k < result.acf.front().size(); ++k) {
      out << k;
      for (const auto& rho : result.acf) out << ',' << format_real(rho[k]);
      out << '\n';
    }
    finish(out, path);
  }
  {
    const fs::path path = out_dir / "summary.csv";
    auto out = open_csv(path);
    out << "sampler,acceptance,ks,final_mse\n";
    for (std::size_t s = 0; s < result.samplers.size(); ++s)
      out << result.samplers[s] << ',' << format_real(result.acceptance[s]) << ','
          << format_real(result.ks[s]) << ',' << format_real(result.mse[s].back()) << '\n';
    finish(out, path);
  }
  return {"mse_curve.csv", "acf.csv", "summary.csv"};
}

std::vector<fs::path> write_exp2(const Exp2Result& result, const fs::path& out_dir) {
  ensure_dir(out_dir);
  {
    const fs::path path = out_dir / "mse_curve.csv";
    auto out = open_csv(path);
    out << "iteration";
    for (const auto& name : result.samplers) out << ',' << name;
    out << ",direct_floor\n";
    for (std::size_t j = 0; j < result.checkpoints.size(); ++j) {
      out << result.checkpoints[j];
      for (const auto& curve : result.mse) out << ',' << format_real(curve[j]);
      out << ',' << format_real(result.floor[j]) << '\n';
    }
    finish(out, path);
  }
  {
    const fs::path path = out_dir / "convergence.csv";
    auto out = open_csv(path);
    out << "sampler,iterations_to_threshold,converged,threshold,acceptance\n";
    for (std::size_t s = 0; s < result.samplers.size(); ++s)
      out << result.samplers[s] << ',' << result.converged_at[s] << ','
          << (result.converged[s] ? 1 : 0) << ',' << format_real(result.threshold) << ','
          << format_real(result.acceptance[s]) << '\n';
    finish(out, path);
  }
  return {"mse_curve.csv", "convergence.csv"};
}

std::vector<fs::path> write_exp3(const Exp3Result& result, const fs::path& out_dir) {
  ensure_dir(out_dir);
  pgm_write(result.noisy, out_dir / "noisy.pgm");
  pgm_write(result.denoised.estimate, out_dir / "denoised.pgm");
  {
    const fs::path path = out_dir / "metrics.csv";
    auto out = open_csv(path);
    out << "image,snr_db,ssim\n";
    out << "noisy," << format_real(result.snr_noisy) << ',' << format_real(result.ssim_noisy) << '\n';
    out << "denoised," << format_real(result.snr_denoised) << ',' << format_real(result.ssim_denoised)
        << '\n';
    finish(out, path);
  }
  {
    const fs::path path = out_dir / "chain.csv";
    auto out = open_csv(path);
    out << "iteration,sigma2,lambda,accepted\n";
    const DenoiseResult& d = result.denoised;
    for (std::size_t r = 0; r < d.sigma2.size(); ++r)
      out << r << ',' << format_real(d.sigma2[r]) << ',' << format_real(d.lambda[r]) << ','
          << (d.accepted[r] ? 1 : 0) << '\n';
    finish(out, path);
  }
  return {"noisy.pgm", "denoised.pgm", "metrics.csv", "chain.csv"};
}

std::vector<fs::path> write_sample(const SampleResult& result, const fs::path& out_file) {
  if (out_file.has_parent_path()) ensure_dir(out_file.parent_path());
  auto out = open_csv(out_file);
  out << "iteration";
  for (std::size_t k = 0; k < result.chain.dimension(); ++k) out << ",x" << k;
  out << ",accepted\n";
  for (std::size_t i = result.config.burn_in; i < result.chain.rows(); ++i) {
    out << i;
    for (double v : result.chain.row(i)) out << ',' << format_real(v);
    out << ',' << (result.chain.accepted()[i] ? 1 : 0) << '\n';
  }
  finish(out, out_file);
  return {out_file.filename()};
}

// ---------------------------------------------------------------------------

void to_json(nlohmann::json& j, const Exp1Params& p) {
  j = {{"p", p.p},           {"gamma", p.gamma},     {"iterations", p.iterations},
       {"burn_in", p.burn_in}, {"epsilon", p.epsilon}, {"steps", p.steps},
       {"rw_std", p.rw_std},   {"mh_std", p.mh_std},   {"checkpoint", p.checkpoint},
       {"max_lag", p.max_lag}, {"seed", p.seed}};
}

void from_json(const nlohmann::json& j, Exp1Params& p) {
  j.at("p").get_to(p.p);
  j.at("gamma").get_to(p.gamma);
  j.at("iterations").get_to(p.iterations);
  j.at("burn_in").get_to(p.burn_in);
  j.at("epsilon").get_to(p.epsilon);
  j.at("steps").get_to(p.steps);
  j.at("rw_std").get_to(p.rw_std);
  j.at("mh_std").get_to(p.mh_std);
  j.at("checkpoint").get_to(p.checkpoint);
  j.at("max_lag").get_to(p.max_lag);
  j.at("seed").get_to(p.seed);
}

void to_json(nlohmann::json& j, const Exp2Params& p) {
  j = {{"dimension", p.dimension},
       {"p", p.p},
       {"gamma", p.gamma},
       {"iterations", p.iterations},
       {"epsilon", p.epsilon},
       {"steps", p.steps},
       {"rw_std", p.rw_std},
       {"bins", p.bins},
       {"reference_samples", p.reference_samples},
       {"reference_count", p.reference_count},
       {"checkpoint", p.checkpoint},
       {"seed", p.seed}};
}

void from_json(const nlohmann::json& j, Exp2Params& p) {
  j.at("dimension").get_to(p.dimension);
  j.at("p").get_to(p.p);
  j.at("gamma").get_to(p.gamma);
  j.at("iterations").get_to(p.iterations);
  j.at("epsilon").get_to(p.epsilon);
  j.at("steps").get_to(p.steps);
  j.at("rw_std").get_to(p.rw_std);
  j.at("bins").get_to(p.bins);
  j.at("reference_samples").get_to(p.reference_samples);
  j.at("reference_count").get_to(p.reference_count);
  j.at("checkpoint").get_to(p.checkpoint);
  j.at("seed").get_to(p.seed);
}

void to_json(nlohmann::json& j, const Exp3Params& p) {
  j = {{"input", p.input},
       {"synthetic_size", p.synthetic_size},
       {"synthetic_amplitude", p.synthetic_amplitude},
       {"noise_var", p.noise_var},
       {"iterations", p.iterations},
       {"burn_in", p.burn_in},
       {"epsilon", p.epsilon},
       {"steps", p.steps},
       {"scheme", p.scheme},
       {"levels", p.levels},
       {"seed", p.seed}};
}

void from_json(const nlohmann::json& j, Exp3Params& p) {
  j.at("input").get_to(p.input);
  j.at("synthetic_size").get_to(p.synthetic_size);
  j.at("synthetic_amplitude").get_to(p.synthetic_amplitude);
  j.at("noise_var").get_to(p.noise_var);
  j.at("iterations").get_to(p.iterations);
  j.at("burn_in").get_to(p.burn_in);
  j.at("epsilon").get_to(p.epsilon);
  j.at("steps").get_to(p.steps);
  j.at("scheme").get_to(p.scheme);
  j.at("levels").get_to(p.levels);
  j.at("seed").get_to(p.seed);
}

void to_json(nlohmann::json& j, const SampleParams& p) {
  j = {{"target", p.target},
       {"sampler", p.sampler},
       {"iterations", p.iterations},
       {"burn_in", p.burn_in},
       {"seed", p.seed}};
}

void from_json(const nlohmann::json& j, SampleParams& p) {
  j.at("target").get_to(p.target);
  j.at("sampler").get_to(p.sampler);
  j.at("iterations").get_to(p.iterations);
  j.at("burn_in").get_to(p.burn_in);
  j.at("seed").get_to(p.seed);
}

}  // namespace nshmc
