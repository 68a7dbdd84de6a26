#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ktrees {

// SplitMix64 step; used for seed conditioning and stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seedable, splittable random stream. Child streams are derived from the
/// original seed (not the consumed engine state), so a pair (seed, stream
/// index) names a reproducible stream regardless of how much the parent has
/// been used. Distributions are implemented here rather than with
/// std::*_distribution so that output is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(condition(seed)) {}

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0xA24BAED4963EE407ull * (stream + 1));
    return splitmix64(s);
  }

  Rng child(std::uint64_t stream) const { return Rng(derive(seed_, stream)); }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1), 53-bit resolution
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // unbiased uniform integer in [0, bound), bound >= 1
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // inverse-CDF exponential with the given rate
  double next_exponential(double rate) { return -std::log1p(-next_double()) / rate; }

 private:
  static std::mt19937_64 condition(std::uint64_t seed) {
    std::uint64_t s = seed;
    return std::mt19937_64(splitmix64(s));
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace ktrees
