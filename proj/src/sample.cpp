#include "nshmc/sample.hpp"

#include <cmath>
#include <numeric>

#include "nshmc/errors.hpp"

namespace nshmc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double squared_norm(std::span<const double> v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

void check_proposal_std(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("proposal_std must be positive");
}

}  // namespace

bool is_hmc(const SamplerKind& kind) {
  return std::holds_alternative<NsHmcScheme1>(kind) || std::holds_alternative<NsHmcScheme2>(kind);
}

std::string sampler_name(const SamplerKind& kind) {
  return std::visit(overloaded{
                        [](const NsHmcScheme1&) { return std::string("nshmc1"); },
                        [](const NsHmcScheme2&) { return std::string("nshmc2"); },
                        [](const RwMh&) { return std::string("rwmh"); },
                        [](const IndepMh&) { return std::string("mh"); },
                    },
                    kind);
}

void SamplerConfig::validate() const {
  if (iterations == 0) throw DomainError("sampler: iterations must be positive");
  if (burn_in >= iterations) throw DomainError("sampler: burn_in must be smaller than iterations");
  if (is_hmc(kind)) {
    if (!leapfrog) throw DomainError("sampler: HMC kinds need a leapfrog configuration");
    leapfrog->validate();
  } else {
    if (leapfrog) throw DomainError("sampler: leapfrog configuration given for a non-HMC kind");
    std::visit(overloaded{
                   [](const RwMh& k) { check_proposal_std(k.proposal_std); },
                   [](const IndepMh& k) { check_proposal_std(k.proposal_std); },
                   [](const auto&) {},
               },
               kind);
  }
}

SamplerConfig SamplerConfig::nshmc(SamplerKind kind, LeapfrogConfig leapfrog,
                                   std::size_t iterations, std::size_t burn_in,
                                   std::uint64_t seed) {
  SamplerConfig c{kind, leapfrog, iterations, burn_in, seed};
  c.validate();
  return c;
}

SamplerConfig SamplerConfig::metropolis(SamplerKind kind, std::size_t iterations,
                                        std::size_t burn_in, std::uint64_t seed) {
  SamplerConfig c{kind, std::nullopt, iterations, burn_in, seed};
  c.validate();
  return c;
}

ChainRecord::ChainRecord(std::size_t dimension, std::size_t burn_in)
    : dimension_(dimension), burn_in_(burn_in) {}

void ChainRecord::reserve(std::size_t rows) {
  samples_.reserve(rows * dimension_);
  accepted_.reserve(rows);
}

void ChainRecord::append(std::span<const double> position, bool accepted) {
  if (position.size() != dimension_) throw DimensionError("ChainRecord: row length mismatch");
  samples_.insert(samples_.end(), position.begin(), position.end());
  accepted_.push_back(accepted);
  if (accepted) ++accepted_count_;
}

std::span<const double> ChainRecord::row(std::size_t i) const {
  return std::span<const double>(samples_).subspan(i * dimension_, dimension_);
}

double ChainRecord::acceptance_rate() const {
  if (accepted_.empty()) return 0.0;
  return static_cast<double>(accepted_count_) / static_cast<double>(accepted_.size());
}

std::vector<double> ChainRecord::coordinate(std::size_t k, std::size_t first) const {
  if (k >= dimension_) throw DimensionError("ChainRecord: coordinate out of range");
  std::vector<double> out;
  out.reserve(rows() > first ? rows() - first : 0);
  for (std::size_t i = first; i < rows(); ++i) out.push_back(samples_[i * dimension_ + k]);
  return out;
}

bool mh_accept(double h_current, double h_proposal, Rng& rng) {
  if (std::isnan(h_current) || std::isnan(h_proposal))
    throw DomainError("mh_accept: NaN Hamiltonian");
  const double u = 1.0 - rng.uniform();  // (0, 1]
  if (h_proposal == HUGE_VAL) return false;
  return std::log(u) <= h_current - h_proposal;
}

IterationResult nshmc_iteration(std::span<const double> x, const PotentialEnergy& energy,
                                const SamplerConfig& config, Rng& rng) {
  IntegratorKind scheme;
  if (std::holds_alternative<NsHmcScheme1>(config.kind))
    scheme = IntegratorKind::SubgradientScheme1;
  else if (std::holds_alternative<NsHmcScheme2>(config.kind))
    scheme = IntegratorKind::ProximalScheme2;
  else
    throw CapabilityError("nshmc_iteration: sampler kind is not an HMC variant");
  if (!config.leapfrog) throw DomainError("nshmc_iteration: missing leapfrog configuration");
  require_capability(energy, scheme);

  PhaseState start{std::vector<double>(x.begin(), x.end()), std::vector<double>(x.size())};
  gaussian_momentum_sample(start.momentum, rng);
  const double h_start = hamiltonian_eval(start, energy);
  PhaseState proposal = integrate_trajectory(start, energy, *config.leapfrog, scheme, rng);
  const double h_proposal = hamiltonian_eval(proposal, energy);
  if (mh_accept(h_start, h_proposal, rng)) return {std::move(proposal.position), true};
  return {std::move(start.position), false};
}

IterationResult rwmh_iteration(std::span<const double> x, const PotentialEnergy& energy,
                               double proposal_std, Rng& rng) {
  check_proposal_std(proposal_std);
  std::vector<double> proposal(x.begin(), x.end());
  for (double& v : proposal) v += proposal_std * rng.normal();
  const double e_current = energy.value(x);
  const double e_proposal = energy.value(proposal);
  if (mh_accept(e_current, e_proposal, rng)) return {std::move(proposal), true};
  return {std::vector<double>(x.begin(), x.end()), false};
}

IterationResult indep_mh_iteration(std::span<const double> x, const PotentialEnergy& energy,
                                   double proposal_std, Rng& rng) {
  check_proposal_std(proposal_std);
  std::vector<double> proposal(x.size());
  for (double& v : proposal) v = proposal_std * rng.normal();
  // Target ratio times q(x) / q(x*) for the fixed N(0, s^2 I) proposal.
  const double two_var = 2.0 * proposal_std * proposal_std;
  const double h_current = energy.value(x) - squared_norm(x) / two_var;
  const double h_proposal = energy.value(proposal) - squared_norm(proposal) / two_var;
  if (mh_accept(h_current, h_proposal, rng)) return {std::move(proposal), true};
  return {std::vector<double>(x.begin(), x.end()), false};
}

IterationResult sampler_iteration(std::span<const double> x, const PotentialEnergy& energy,
                                  const SamplerConfig& config, Rng& rng) {
  return std::visit(overloaded{
                        [&](const RwMh& k) { return rwmh_iteration(x, energy, k.proposal_std, rng); },
                        [&](const IndepMh& k) {
                          return indep_mh_iteration(x, energy, k.proposal_std, rng);
                        },
                        [&](const auto&) { return nshmc_iteration(x, energy, config, rng); },
                    },
                    config.kind);
}

ChainRecord run_chain(std::span<const double> initial, const PotentialEnergy& energy,
                      const SamplerConfig& config) {
  config.validate();
  if (initial.size() != energy.dimension())
    throw DimensionError("run_chain: initial position does not match the energy dimension");
  Rng rng(config.seed);
  ChainRecord record(initial.size(), config.burn_in);
  record.reserve(config.iterations);
  std::vector<double> x(initial.begin(), initial.end());
  for (std::size_t r = 0; r < config.iterations; ++r) {
    IterationResult step = sampler_iteration(x, energy, config, rng);
    x = std::move(step.position);
    record.append(x, step.accepted);
  }
  return record;
}

}  // namespace nshmc
