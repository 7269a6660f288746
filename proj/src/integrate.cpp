#include "nshmc/integrate.hpp"

#include <cmath>
#include <vector>

#include "nshmc/errors.hpp"

namespace nshmc {

void LeapfrogConfig::validate() const {
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw DomainError("leapfrog: epsilon must be finite and non-negative");
  if (steps == 0) throw DomainError("leapfrog: steps must be at least 1");
}

std::string_view to_string(IntegratorKind kind) {
  switch (kind) {
    case IntegratorKind::SmoothGradient:
      return "smooth";
    case IntegratorKind::SubgradientScheme1:
      return "subgradient";
    case IntegratorKind::ProximalScheme2:
      return "proximal";
  }
  return "unknown";
}

void require_capability(const PotentialEnergy& energy, IntegratorKind kind) {
  switch (kind) {
    case IntegratorKind::SmoothGradient:
      if (!energy.has_gradient()) throw CapabilityError("smooth leapfrog needs a gradient");
      break;
    case IntegratorKind::SubgradientScheme1:
      if (!energy.has_subgradient())
        throw CapabilityError("subgradient leapfrog needs a subgradient sampler");
      break;
    case IntegratorKind::ProximalScheme2:
      if (!energy.has_prox()) throw CapabilityError("proximal leapfrog needs a prox");
      break;
  }
}

namespace {

/// Writes the kick direction at x into `force`: gradient, sampled subgradient
/// or prox residual.
class KickField {
 public:
  KickField(const PotentialEnergy& energy, IntegratorKind kind, Rng* rng)
      : energy_(energy), kind_(kind), rng_(rng) {
    require_capability(energy, kind);
    if (kind == IntegratorKind::SubgradientScheme1 && rng_ == nullptr)
      throw CapabilityError("subgradient leapfrog needs a random stream");
  }

  void operator()(std::span<const double> x, std::span<double> force) const {
    switch (kind_) {
      case IntegratorKind::SmoothGradient:
        energy_.gradient(x, force);
        break;
      case IntegratorKind::SubgradientScheme1:
        energy_.subgradient(x, force, *rng_);
        break;
      case IntegratorKind::ProximalScheme2:
        energy_.prox(x, force);
        for (std::size_t i = 0; i < x.size(); ++i) force[i] = x[i] - force[i];
        break;
    }
  }

 private:
  const PotentialEnergy& energy_;
  IntegratorKind kind_;
  Rng* rng_;
};

void check_state(const PhaseState& state, const PotentialEnergy& energy) {
  if (state.position.size() != state.momentum.size())
    throw DimensionError("leapfrog: position and momentum lengths differ");
  if (state.position.size() != energy.dimension())
    throw DimensionError("leapfrog: state dimension does not match the energy");
}

void half_kick(std::vector<double>& q, std::span<const double> force, double epsilon) {
  const double half = epsilon / 2.0;
  for (std::size_t i = 0; i < q.size(); ++i) q[i] -= half * force[i];
}

void drift(std::vector<double>& x, const std::vector<double>& q, double epsilon) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += epsilon * q[i];
}

void step_in_place(PhaseState& s, const KickField& kick, double epsilon,
                   std::vector<double>& force) {
  kick(s.position, force);
  half_kick(s.momentum, force, epsilon);
  drift(s.position, s.momentum, epsilon);
  kick(s.position, force);
  half_kick(s.momentum, force, epsilon);
}

PhaseState single_step(const PhaseState& state, const PotentialEnergy& energy, double epsilon,
                       IntegratorKind kind, Rng* rng) {
  check_state(state, energy);
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw DomainError("leapfrog: epsilon must be finite and non-negative");
  const KickField kick(energy, kind, rng);
  PhaseState next = state;
  std::vector<double> force(state.dimension());
  step_in_place(next, kick, epsilon, force);
  return next;
}

}  // namespace

PhaseState leapfrog_smooth_step(const PhaseState& state, const PotentialEnergy& energy,
                                double epsilon) {
  return single_step(state, energy, epsilon, IntegratorKind::SmoothGradient, nullptr);
}

PhaseState leapfrog_subgrad_step(const PhaseState& state, const PotentialEnergy& energy,
                                 double epsilon, Rng& rng) {
  return single_step(state, energy, epsilon, IntegratorKind::SubgradientScheme1, &rng);
}

PhaseState leapfrog_prox_step(const PhaseState& state, const PotentialEnergy& energy,
                              double epsilon) {
  return single_step(state, energy, epsilon, IntegratorKind::ProximalScheme2, nullptr);
}

PhaseState integrate_trajectory(const PhaseState& state, const PotentialEnergy& energy,
                                const LeapfrogConfig& config, IntegratorKind kind, Rng& rng) {
  config.validate();
  check_state(state, energy);
  const KickField kick(energy, kind, &rng);
  PhaseState current = state;
  std::vector<double> force(state.dimension());
  // Each loop pass is one full step; the two half kicks meeting between
  // consecutive steps are applied separately, as in the algorithm listings.
  for (std::size_t l = 0; l < config.steps; ++l) step_in_place(current, kick, config.epsilon, force);
  return current;
}

}  // namespace nshmc
