#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nshmc/image.hpp"
#include "nshmc/model.hpp"
#include "nshmc/random.hpp"
#include "nshmc/sample.hpp"
#include "nshmc/wavelet.hpp"

namespace nshmc {

/// Observation y = F^-1 x + n with a Laplace prior of scale lambda on the
/// wavelet coefficients x, an IG(a, b) hyperprior on lambda and a Jeffreys
/// prior on the noise variance.
struct DenoiseModel {
  Image observed;
  WaveletOperator wavelet;
  double hyper_a = 1e-3;
  double hyper_b = 1e-3;

  DenoiseModel(Image y, std::size_t levels = 3, double a = 1e-3, double b = 1e-3);
};

/// U(x) = ||x||_1 / lambda + alpha ||Fy - x||^2 / 2 with alpha = 1 / sigma_n^2.
/// Exposes value, prox (prox_denoise_energy) and a subgradient sampler.
PotentialEnergy denoise_energy(std::vector<double> fy, double alpha, double lambda);

/// U(x) evaluated in the image domain: ||x||_1 / lambda + ||y - F^-1 x||^2 / (2 sigma2).
double denoise_energy_direct(const Image& observed, std::span<const double> coeffs,
                             const WaveletOperator& op, double sigma2, double lambda);

/// sigma_n^2 | x, y ~ IG(N / 2, ||y - F^-1 x||^2 / 2). A zero residual is
/// floored at a tiny positive scale so the draw stays finite.
double sample_noise_variance(const Image& observed, std::span<const double> coeffs,
                             const WaveletOperator& op, Rng& rng);

/// lambda | x ~ IG(a + N, b + ||x||_1).
double sample_prior_scale(std::span<const double> coeffs, double a, double b, Rng& rng);

/// Noise standard deviation from the median absolute value of the finest
/// diagonal detail band of F y.
double estimate_noise_std(std::span<const double> fy, const WaveletOperator& op);

/// Starting point of the x chain: F y plus white noise at the estimated level.
/// Starting exactly at F y would zero the residual and collapse the first
/// noise-variance draw.
std::vector<double> initial_coefficients(std::span<const double> fy, const WaveletOperator& op,
                                         Rng& rng);

struct DenoiseResult {
  Image estimate;                   ///< F^-1 of the post-burn-in mean of x
  std::vector<double> sigma2;       ///< one draw per iteration
  std::vector<double> lambda;       ///< one draw per iteration
  std::vector<bool> accepted;       ///< ns-HMC acceptance per iteration
  std::optional<ChainRecord> coefficients;  ///< every x draw, when requested

  double acceptance_rate() const;
};

/// Gibbs sampler over (sigma_n^2, lambda, x). `sampler` supplies the ns-HMC
/// scheme for the x block, its leapfrog settings, the iteration count, the
/// burn-in and the seed. x starts at initial_coefficients().
DenoiseResult gibbs_denoise_run(const DenoiseModel& model, const SamplerConfig& sampler,
                                bool record_coefficients = false);

/// Piecewise-constant test scene on a size x size grid: zero background, two
/// rectangles at 0.75 and 0.375 of `amplitude`, a disc at `amplitude`.
Image synthetic_piecewise_constant(std::size_t size = 64, double amplitude = 25.0);

/// image + N(0, variance) noise per pixel; variance 0 returns the image unchanged.
Image add_gaussian_noise(const Image& image, double variance, Rng& rng);

}  // namespace nshmc
