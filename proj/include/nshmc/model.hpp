#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "nshmc/convex.hpp"
#include "nshmc/random.hpp"

namespace nshmc {

/// Generalized Gaussian parameters: density proportional to exp(-|x|^p / gamma).
struct GGParams {
  double gamma = 1.0;
  double p = 1.0;

  void validate() const;
};

/// Inverse gamma parameters: density proportional to v^(-shape-1) exp(-scale / v).
struct IGParams {
  double shape = 1.0;
  double scale = 1.0;

  void validate() const;
};

/// Position x and momentum q of the Hamiltonian system.
struct PhaseState {
  std::vector<double> position;
  std::vector<double> momentum;

  std::size_t dimension() const { return position.size(); }
};

/// Convex potential energy E(x) on R^N together with the first-order
/// information the integrators may ask for. Each capability is optional.
class PotentialEnergy {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using MapFn = std::function<void(std::span<const double>, std::span<double>)>;
  using SubgradientFn = std::function<void(std::span<const double>, std::span<double>, Rng&)>;

  PotentialEnergy(std::size_t dimension, ValueFn value);

  PotentialEnergy& with_prox(MapFn prox);
  PotentialEnergy& with_gradient(MapFn gradient);
  PotentialEnergy& with_subgradient(SubgradientFn subgradient);

  /// E(x) = sum_i f(x_i), with every capability f supports.
  static PotentialEnergy separable(const ScalarConvexFn& f, std::size_t dimension);

  std::size_t dimension() const { return dimension_; }

  double value(std::span<const double> x) const;

  bool has_prox() const { return static_cast<bool>(prox_); }
  bool has_gradient() const { return static_cast<bool>(gradient_); }
  bool has_subgradient() const { return static_cast<bool>(subgradient_); }

  void prox(std::span<const double> x, std::span<double> out) const;
  void gradient(std::span<const double> x, std::span<double> out) const;
  void subgradient(std::span<const double> x, std::span<double> out, Rng& rng) const;

 private:
  void check_dimension(std::span<const double> x) const;

  std::size_t dimension_;
  ValueFn value_;
  MapFn prox_;
  MapFn gradient_;
  SubgradientFn subgradient_;
};

/// GG density p / (2 gamma^(1/p) Gamma(1/p)) exp(-|x|^p / gamma).
double gg_density(double x, const GGParams& params);

/// Analytic GG distribution function, through the regularized lower incomplete gamma.
double gg_cdf(double x, const GGParams& params);

/// Separable GG energy sum_i |x_i|^p / gamma on R^dimension.
PotentialEnergy gg_energy(const GGParams& params, std::size_t dimension = 1);

/// H(x, q) = E(x) + q'q / 2.
double hamiltonian_eval(const PhaseState& state, const PotentialEnergy& energy);

double kinetic_energy(std::span<const double> momentum);

/// n independent standard normal draws.
std::vector<double> gaussian_momentum_sample(std::size_t n, Rng& rng);
void gaussian_momentum_sample(std::span<double> out, Rng& rng);

/// Gamma(shape, 1) variate (Marsaglia-Tsang squeeze; shape < 1 boosted by U^(1/shape)).
double gamma_sample(double shape, Rng& rng);

/// Exact GG draw: S (gamma G)^(1/p), S a fair sign, G ~ Gamma(1/p, 1).
double gg_direct_sample(const GGParams& params, Rng& rng);

/// 1 / G with G ~ Gamma(shape, rate = scale).
double ig_sample(const IGParams& params, Rng& rng);

}  // namespace nshmc
