#pragma once

#include <cstdint>

namespace rbo {

// splitmix64: tiny, fast, and stable across platforms, which is what the
// simulator needs for reproducible experiments. Not cryptographic.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound); bound must be nonzero. Multiply-shift mapping:
  // deterministic, with bias below bound / 2^64, negligible for the bounds
  // the simulator uses (at most 2^63).
  constexpr std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t r = next();
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(r) * static_cast<unsigned __int128>(bound)) >> 64);
  }

  // Uniform in [0, 1) with 53 random bits.
  constexpr double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // True with probability p (clamped to [0, 1]).
  constexpr bool bernoulli(double p) {
    if (p >= 1.0) {
      return true;
    }
    if (p <= 0.0) {
      return false;
    }
    return uniform01() < p;
  }

 private:
  std::uint64_t state_;
};

// Stateless per-stream seed derivation: feeding the master seed and stream
// coordinates through the splitmix64 finalizer decorrelates streams, so
// trials can run in any order (or on any thread) and still see identical
// randomness.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(master ^ (a * 0xd6e8feb86659fd93ull) ^ (b * 0xa5a5a5a5a5a5a5a5ull));
  g.next();
  return g.next();
}

}  // namespace rbo
