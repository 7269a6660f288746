#include "nshmc/random.hpp"

namespace nshmc {

std::uint64_t Rng::derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 finalizer over master + fixed offset
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace nshmc
