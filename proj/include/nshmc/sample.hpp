#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nshmc/integrate.hpp"
#include "nshmc/model.hpp"
#include "nshmc/random.hpp"

namespace nshmc {

struct NsHmcScheme1 {};
struct NsHmcScheme2 {};
struct RwMh {
  double proposal_std = 1.0;
};
struct IndepMh {
  double proposal_std = 1.0;
};

using SamplerKind = std::variant<NsHmcScheme1, NsHmcScheme2, RwMh, IndepMh>;

bool is_hmc(const SamplerKind& kind);
std::string sampler_name(const SamplerKind& kind);

struct SamplerConfig {
  SamplerKind kind = NsHmcScheme2{};
  std::optional<LeapfrogConfig> leapfrog = LeapfrogConfig{};
  std::size_t iterations = 1000;
  std::size_t burn_in = 0;
  std::uint64_t seed = 0;

  /// burn_in < iterations; leapfrog present iff the kind is an HMC variant.
  void validate() const;

  static SamplerConfig nshmc(SamplerKind kind, LeapfrogConfig leapfrog, std::size_t iterations,
                             std::size_t burn_in, std::uint64_t seed);
  static SamplerConfig metropolis(SamplerKind kind, std::size_t iterations, std::size_t burn_in,
                                  std::uint64_t seed);
};

/// Every state visited by run_chain, one row per iteration.
class ChainRecord {
 public:
  ChainRecord() = default;
  ChainRecord(std::size_t dimension, std::size_t burn_in);

  void reserve(std::size_t rows);
  void append(std::span<const double> position, bool accepted);

  std::size_t rows() const { return accepted_.size(); }
  std::size_t dimension() const { return dimension_; }
  std::size_t burn_in() const { return burn_in_; }

  std::span<const double> row(std::size_t i) const;
  const std::vector<double>& samples() const { return samples_; }
  const std::vector<bool>& accepted() const { return accepted_; }

  /// Mean of the accepted flags over all rows.
  double acceptance_rate() const;

  /// Coordinate `k` of every row from `first` on.
  std::vector<double> coordinate(std::size_t k, std::size_t first = 0) const;

  bool operator==(const ChainRecord&) const = default;

 private:
  std::size_t dimension_ = 0;
  std::size_t burn_in_ = 0;
  std::vector<double> samples_;
  std::vector<bool> accepted_;
  std::size_t accepted_count_ = 0;
};

struct IterationResult {
  std::vector<double> position;
  bool accepted = false;
};

/// Accept with probability min{1, exp(h_current - h_proposal)}. Always draws
/// one uniform so the stream advances identically on every branch.
bool mh_accept(double h_current, double h_proposal, Rng& rng);

/// One ns-HMC iteration: fresh momentum, leapfrog trajectory, MH test on H.
IterationResult nshmc_iteration(std::span<const double> x, const PotentialEnergy& energy,
                                const SamplerConfig& config, Rng& rng);

/// Random-walk MH with a N(x, proposal_std^2 I) proposal.
IterationResult rwmh_iteration(std::span<const double> x, const PotentialEnergy& energy,
                               double proposal_std, Rng& rng);

/// Independence MH with a N(0, proposal_std^2 I) proposal.
IterationResult indep_mh_iteration(std::span<const double> x, const PotentialEnergy& energy,
                                   double proposal_std, Rng& rng);

/// Kernel dispatch on config.kind.
IterationResult sampler_iteration(std::span<const double> x, const PotentialEnergy& energy,
                                  const SamplerConfig& config, Rng& rng);

/// Runs config.iterations kernel steps from `initial` with a stream seeded by
/// config.seed.
ChainRecord run_chain(std::span<const double> initial, const PotentialEnergy& energy,
                      const SamplerConfig& config);

}  // namespace nshmc
