#include "eggd/common.hpp"

namespace eggd {

RandomSeed RandomSeed::derive(std::uint64_t stream) const {
  // splitmix64 finalizer over (seed, stream)
  std::uint64_t z = value + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return RandomSeed{z ^ (z >> 31)};
}

}  // namespace eggd
