#include "nshmc/model.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "nshmc/errors.hpp"

namespace nshmc {

void GGParams::validate() const {
  if (!(gamma > 0.0)) throw DomainError("GG: gamma must be positive");
  if (!(p >= 1.0)) throw DomainError("GG: p must be >= 1");
}

void IGParams::validate() const {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw DomainError("inverse gamma: shape and scale must be positive");
}

PotentialEnergy::PotentialEnergy(std::size_t dimension, ValueFn value)
    : dimension_(dimension), value_(std::move(value)) {
  if (dimension_ == 0) throw DomainError("PotentialEnergy: dimension must be positive");
  if (!value_) throw DomainError("PotentialEnergy: empty value function");
}

PotentialEnergy& PotentialEnergy::with_prox(MapFn prox) {
  prox_ = std::move(prox);
  return *this;
}

PotentialEnergy& PotentialEnergy::with_gradient(MapFn gradient) {
  gradient_ = std::move(gradient);
  return *this;
}

PotentialEnergy& PotentialEnergy::with_subgradient(SubgradientFn subgradient) {
  subgradient_ = std::move(subgradient);
  return *this;
}

PotentialEnergy PotentialEnergy::separable(const ScalarConvexFn& f, std::size_t dimension) {
  PotentialEnergy energy(dimension, [f](std::span<const double> x) {
    double sum = 0.0;
    for (double xi : x) sum += f(xi);
    return sum;
  });
  energy.with_prox([f](std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = f.prox(x[i]);
  });
  if (f.differentiable()) {
    energy.with_gradient([f](std::span<const double> x, std::span<double> out) {
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = f.derivative(x[i]);
    });
  }
  if (f.has_subgradient_sampler()) {
    energy.with_subgradient([f](std::span<const double> x, std::span<double> out, Rng& rng) {
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = f.sample_subgradient(x[i], rng);
    });
  }
  return energy;
}

void PotentialEnergy::check_dimension(std::span<const double> x) const {
  if (x.size() != dimension_)
    throw DimensionError("PotentialEnergy: expected dimension " + std::to_string(dimension_) +
                         ", got " + std::to_string(x.size()));
}

double PotentialEnergy::value(std::span<const double> x) const {
  check_dimension(x);
  return value_(x);
}

void PotentialEnergy::prox(std::span<const double> x, std::span<double> out) const {
  if (!prox_) throw CapabilityError("energy does not expose a proximity operator");
  check_dimension(x);
  check_dimension(out);
  prox_(x, out);
}

void PotentialEnergy::gradient(std::span<const double> x, std::span<double> out) const {
  if (!gradient_) throw CapabilityError("energy does not expose a gradient");
  check_dimension(x);
  check_dimension(out);
  gradient_(x, out);
}

void PotentialEnergy::subgradient(std::span<const double> x, std::span<double> out,
                                  Rng& rng) const {
  if (!subgradient_) throw CapabilityError("energy does not expose a subgradient sampler");
  check_dimension(x);
  check_dimension(out);
  subgradient_(x, out, rng);
}

double gg_density(double x, const GGParams& params) {
  params.validate();
  const double norm =
      params.p / (2.0 * std::pow(params.gamma, 1.0 / params.p) * std::tgamma(1.0 / params.p));
  return norm * std::exp(-std::pow(std::fabs(x), params.p) / params.gamma);
}

double gg_cdf(double x, const GGParams& params) {
  params.validate();
  if (x == 0.0) return 0.5;
  const double mass = boost::math::gamma_p(1.0 / params.p, std::pow(std::fabs(x), params.p) / params.gamma);
  return x > 0.0 ? 0.5 + 0.5 * mass : 0.5 - 0.5 * mass;
}

PotentialEnergy gg_energy(const GGParams& params, std::size_t dimension) {
  params.validate();
  return PotentialEnergy::separable(ScalarConvexFn::power(params.gamma, params.p), dimension);
}

double kinetic_energy(std::span<const double> momentum) {
  return 0.5 * std::inner_product(momentum.begin(), momentum.end(), momentum.begin(), 0.0);
}

double hamiltonian_eval(const PhaseState& state, const PotentialEnergy& energy) {
  if (state.momentum.size() != state.position.size())
    throw DimensionError("hamiltonian_eval: position and momentum lengths differ");
  return energy.value(state.position) + kinetic_energy(state.momentum);
}

std::vector<double> gaussian_momentum_sample(std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("gaussian_momentum_sample: n must be positive");
  std::vector<double> q(n);
  gaussian_momentum_sample(q, rng);
  return q;
}

void gaussian_momentum_sample(std::span<double> out, Rng& rng) {
  for (double& v : out) v = rng.normal();
}

double gamma_sample(double shape, Rng& rng) {
  if (!(shape > 0.0) || !std::isfinite(shape))
    throw DomainError("gamma_sample: shape must be positive");
  if (shape < 1.0) {
    // Gamma(a) = Gamma(a + 1) * U^(1/a)
    const double boosted = gamma_sample(shape + 1.0, rng);
    double u = rng.uniform();
    while (u == 0.0) u = rng.uniform();
    return boosted * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z;
    double v;
    do {
      z = rng.normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double gg_direct_sample(const GGParams& params, Rng& rng) {
  params.validate();
  const double g = gamma_sample(1.0 / params.p, rng);
  const double magnitude = std::pow(params.gamma * g, 1.0 / params.p);
  return rng.sign() * magnitude;
}

double ig_sample(const IGParams& params, Rng& rng) {
  params.validate();
  double g = 0.0;
  while (g == 0.0) g = gamma_sample(params.shape, rng) / params.scale;
  return 1.0 / g;
}

}  // namespace nshmc
