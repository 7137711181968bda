#include "scj/random.hpp"

#include <limits>
#include <stdexcept>

namespace scj {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
  // Largest multiple of bound that fits; reject the tail.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

BigCount Rng::below(const BigCount& bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::below: empty range");
  if (bound <= std::numeric_limits<std::uint64_t>::max()) {
    return BigCount(below(static_cast<std::uint64_t>(bound)));
  }
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t words = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (words - 1);
  const std::uint64_t top_mask = top_bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << top_bits) - 1;
  for (;;) {
    BigCount x = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = next();
      if (w == 0) word &= top_mask;
      x <<= 64;
      x += word;
    }
    if (x < bound) return x;
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace scj
