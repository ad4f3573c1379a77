#pragma once

#include <cstdint>

namespace translab {

// Counter-based deterministic RNG. Every Monte Carlo trial gets its own
// stream derived from (master_seed, trial_index) by a fixed mixing, so
// results do not depend on execution order or the number of worker threads.
//
// The generator is splitmix64; the stream seed is
//   mix(mix(master_seed) + 0x9E3779B97F4A7C15 * (trial_index + 1)).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
    return Rng(mix(mix(master_seed) + 0x9E3779B97F4A7C15ULL * (trial_index + 1)));
  }

  std::uint64_t next_u64() {
    state_ = mix(state_);
    return state_;
  }

  // 53-bit mantissa uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  std::uint32_t next_bit() { return static_cast<std::uint32_t>(next_u64() >> 63); }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace translab
