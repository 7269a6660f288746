#include "nshmc/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "nshmc/convex.hpp"
#include "nshmc/errors.hpp"

namespace nshmc {

namespace {

// Smallest residual energy handed to the noise-variance conditional.
constexpr double kMinResidualEnergy = 1e-12;

// Median absolute deviation of a standard normal.
constexpr double kMadToStd = 0.6744897501960817;

double l1_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

double residual_energy(const Image& observed, std::span<const double> coeffs,
                       const WaveletOperator& op) {
  if (observed.width != op.width() || observed.height != op.height())
    throw DimensionError("denoise: observation and wavelet grid differ");
  const std::vector<double> z = op.inverse(coeffs);
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double d = observed.pixels[i] - z[i];
    s += d * d;
  }
  return s;
}

}  // namespace

DenoiseModel::DenoiseModel(Image y, std::size_t levels, double a, double b)
    : observed(std::move(y)), wavelet(observed.width, observed.height, levels), hyper_a(a), hyper_b(b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("denoise: hyperparameters must be positive");
  for (double v : observed.pixels)
    if (!std::isfinite(v)) throw DomainError("denoise: observed image has non-finite pixels");
}

PotentialEnergy denoise_energy(std::vector<double> fy, double alpha, double lambda) {
  if (!(alpha > 0.0) || !(lambda > 0.0))
    throw DomainError("denoise_energy: alpha and lambda must be positive");
  auto centre = std::make_shared<const std::vector<double>>(std::move(fy));
  const std::size_t n = centre->size();
  PotentialEnergy energy(n, [centre, alpha, lambda](std::span<const double> x) {
    double l1 = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      l1 += std::fabs(x[i]);
      const double d = (*centre)[i] - x[i];
      sq += d * d;
    }
    return l1 / lambda + 0.5 * alpha * sq;
  });
  energy.with_prox([centre, alpha, lambda](std::span<const double> x, std::span<double> out) {
    prox_denoise_energy(x, *centre, alpha, lambda, out);
  });
  energy.with_subgradient(
      [centre, alpha, lambda](std::span<const double> x, std::span<double> out, Rng& rng) {
        for (std::size_t i = 0; i < x.size(); ++i)
          out[i] = subgrad_abs_sample(x[i], rng) / lambda + alpha * (x[i] - (*centre)[i]);
      });
  return energy;
}

double denoise_energy_direct(const Image& observed, std::span<const double> coeffs,
                             const WaveletOperator& op, double sigma2, double lambda) {
  if (!(sigma2 > 0.0) || !(lambda > 0.0))
    throw DomainError("denoise_energy_direct: sigma2 and lambda must be positive");
  return l1_norm(coeffs) / lambda + residual_energy(observed, coeffs, op) / (2.0 * sigma2);
}

double sample_noise_variance(const Image& observed, std::span<const double> coeffs,
                             const WaveletOperator& op, Rng& rng) {
  const double n = static_cast<double>(coeffs.size());
  const double scale = std::max(residual_energy(observed, coeffs, op), kMinResidualEnergy) / 2.0;
  return ig_sample(IGParams{n / 2.0, scale}, rng);
}

double sample_prior_scale(std::span<const double> coeffs, double a, double b, Rng& rng) {
  const double n = static_cast<double>(coeffs.size());
  return ig_sample(IGParams{a + n, b + l1_norm(coeffs)}, rng);
}

double estimate_noise_std(std::span<const double> fy, const WaveletOperator& op) {
  if (fy.size() != op.size()) throw DimensionError("estimate_noise_std: coefficient length mismatch");
  const std::size_t w = op.width();
  const std::size_t h = op.height();
  std::vector<double> diag;
  diag.reserve((w / 2) * (h / 2));
  for (std::size_t y = h / 2; y < h; ++y)
    for (std::size_t x = w / 2; x < w; ++x) diag.push_back(std::fabs(fy[y * w + x]));
  const auto mid = diag.begin() + static_cast<std::ptrdiff_t>(diag.size() / 2);
  std::nth_element(diag.begin(), mid, diag.end());
  return *mid / kMadToStd;
}

std::vector<double> initial_coefficients(std::span<const double> fy, const WaveletOperator& op,
                                         Rng& rng) {
  const double sd = estimate_noise_std(fy, op);
  std::vector<double> x(fy.begin(), fy.end());
  if (sd > 0.0)
    for (double& v : x) v += sd * rng.normal();
  return x;
}

double DenoiseResult::acceptance_rate() const {
  if (accepted.empty()) return 0.0;
  const auto hits = std::count(accepted.begin(), accepted.end(), true);
  return static_cast<double>(hits) / static_cast<double>(accepted.size());
}

DenoiseResult gibbs_denoise_run(const DenoiseModel& model, const SamplerConfig& sampler,
                                bool record_coefficients) {
  sampler.validate();
  if (!is_hmc(sampler.kind)) throw DomainError("gibbs_denoise_run: the x block needs an ns-HMC kind");

  const WaveletOperator& op = model.wavelet;
  const std::vector<double> fy = op.forward(model.observed.pixels);
  std::vector<double> sum(fy.size(), 0.0);
  Rng rng(sampler.seed);
  std::vector<double> x = initial_coefficients(fy, op, rng);

  DenoiseResult result;
  result.sigma2.reserve(sampler.iterations);
  result.lambda.reserve(sampler.iterations);
  result.accepted.reserve(sampler.iterations);
  if (record_coefficients) {
    result.coefficients.emplace(x.size(), sampler.burn_in);
    result.coefficients->reserve(sampler.iterations);
  }

  for (std::size_t r = 0; r < sampler.iterations; ++r) {
    const double sigma2 = sample_noise_variance(model.observed, x, op, rng);
    const double lambda = sample_prior_scale(x, model.hyper_a, model.hyper_b, rng);
    const PotentialEnergy energy = denoise_energy(fy, 1.0 / sigma2, lambda);
    IterationResult step = nshmc_iteration(x, energy, sampler, rng);
    x = std::move(step.position);

    result.sigma2.push_back(sigma2);
    result.lambda.push_back(lambda);
    result.accepted.push_back(step.accepted);
    if (record_coefficients) result.coefficients->append(x, step.accepted);
    if (r >= sampler.burn_in)
      for (std::size_t i = 0; i < x.size(); ++i) sum[i] += x[i];
  }

  const double kept = static_cast<double>(sampler.iterations - sampler.burn_in);
  for (double& v : sum) v /= kept;
  result.estimate = haar_inverse(sum, op);
  return result;
}

Image synthetic_piecewise_constant(std::size_t size, double amplitude) {
  if (size < 16) throw DimensionError("synthetic image: size must be at least 16");
  if (!(amplitude > 0.0) || !std::isfinite(amplitude))
    throw DomainError("synthetic image: amplitude must be positive");
  Image img(size, size, 0.0);
  const double s = static_cast<double>(size);
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      const double u = (static_cast<double>(x) + 0.5) / s;
      const double v = (static_cast<double>(y) + 0.5) / s;
      if (u > 0.125 && u < 0.5 && v > 0.125 && v < 0.4375) img.at(x, y) = 0.75 * amplitude;
      if (u > 0.5625 && u < 0.875 && v > 0.25 && v < 0.875) img.at(x, y) = 0.375 * amplitude;
      const double du = u - 0.3;
      const double dv = v - 0.7;
      if (du * du + dv * dv < 0.18 * 0.18) img.at(x, y) = amplitude;
    }
  }
  return img;
}

Image add_gaussian_noise(const Image& image, double variance, Rng& rng) {
  if (!(variance >= 0.0) || !std::isfinite(variance))
    throw DomainError("add_gaussian_noise: variance must be non-negative");
  Image noisy = image;
  if (variance == 0.0) return noisy;
  const double sd = std::sqrt(variance);
  for (double& v : noisy.pixels) v += sd * rng.normal();
  return noisy;
}

}  // namespace nshmc
