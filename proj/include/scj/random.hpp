#pragma once

#include <cstdint>
#include <random>

#include "scj/bigcount.hpp"

namespace scj {

// Seed used when the caller gives none.
inline constexpr std::uint64_t kDefaultSeed = 20130101;

// Random source for the samplers. The engine is std::mt19937_64, whose output
// stream is fixed by the C++ standard; all range reduction is done here by
// rejection, so a seed reproduces the same draws on every conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);
  BigCount below(const BigCount& bound);

 private:
  std::mt19937_64 engine_;
};

// Independent per-draw seed for draw `index` of a batch seeded with `seed`
// (splitmix64 finaliser). Lets a batch be generated in any order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace scj
