#pragma once

#include <cstddef>
#include <string_view>

#include "nshmc/model.hpp"
#include "nshmc/random.hpp"

namespace nshmc {

/// Step size and number of leapfrog steps per trajectory.
struct LeapfrogConfig {
  double epsilon = 0.05;
  std::size_t steps = 10;

  /// epsilon must be finite and non-negative (0 is the degenerate identity
  /// trajectory), steps >= 1.
  void validate() const;
};

enum class IntegratorKind {
  SmoothGradient,      ///< kicks with the gradient of E
  SubgradientScheme1,  ///< kicks with a subgradient drawn uniformly from the subdifferential
  ProximalScheme2,     ///< kicks with the prox residual x - prox_E(x)
};

std::string_view to_string(IntegratorKind kind);

/// Throws CapabilityError when `energy` lacks what `kind` needs.
void require_capability(const PotentialEnergy& energy, IntegratorKind kind);

/// One leapfrog step: half kick, drift, half kick, using the gradient.
PhaseState leapfrog_smooth_step(const PhaseState& state, const PotentialEnergy& energy,
                                double epsilon);

/// One leapfrog step with the gradient replaced by sampled subgradients.
PhaseState leapfrog_subgrad_step(const PhaseState& state, const PotentialEnergy& energy,
                                 double epsilon, Rng& rng);

/// One leapfrog step with the gradient replaced by the prox residual x - prox_E(x).
PhaseState leapfrog_prox_step(const PhaseState& state, const PotentialEnergy& energy,
                              double epsilon);

/// Composes config.steps leapfrog steps of the selected kind and returns the
/// proposal (x*, q*). `rng` is only consumed by SubgradientScheme1.
PhaseState integrate_trajectory(const PhaseState& state, const PotentialEnergy& energy,
                                const LeapfrogConfig& config, IntegratorKind kind, Rng& rng);

}  // namespace nshmc
