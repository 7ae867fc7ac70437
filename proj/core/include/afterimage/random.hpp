#pragma once

#include <cstdint>
#include <string_view>

namespace afterimage {

/// SplitMix64 output function (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

__extension__ using Uint128 = unsigned __int128;

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// FNV-1a, used to turn stream labels and subject ids into keys.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Counter-addressed random words: word(counter, attempt) is a pure function
/// of (seed, stream, counter, attempt), so per-cell draws are identical no
/// matter how cells are scheduled.
///
///   key                    = mix(mix(seed) ^ stream)
///   word(counter, attempt) = mix(mix(key ^ counter) + gamma * (attempt + 1))
///
/// with mix the SplitMix64 finalizer and gamma = 0x9E3779B97F4A7C15.
class CounterRandom {
 public:
  constexpr CounterRandom(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64_mix(splitmix64_mix(seed) ^ stream)) {}
  constexpr CounterRandom(std::uint64_t seed, std::string_view stream)
      : CounterRandom(seed, fnv1a64(stream)) {}

  constexpr std::uint64_t word(std::uint64_t counter, std::uint64_t attempt = 0) const {
    return splitmix64_mix(splitmix64_mix(key_ ^ counter) + kGoldenGamma * (attempt + 1));
  }

  /// Uniform integer in [0, bound) for `counter`, bound > 0. Lemire's
  /// multiply-shift with rejection; rejected draws move to the next attempt.
  std::uint64_t uniform(std::uint64_t counter, std::uint64_t bound) const {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (std::uint64_t attempt = 0;; ++attempt) {
      const Uint128 m = static_cast<Uint128>(word(counter, attempt)) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold) {
        return static_cast<std::uint64_t>(m >> 64);
      }
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit(std::uint64_t counter) const {
    return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

/// Sequential view over a CounterRandom for code that consumes draws in a
/// fixed order (generators, shuffles).
class SequentialRandom {
 public:
  SequentialRandom(std::uint64_t seed, std::string_view stream) : rng_(seed, stream) {}

  std::uint64_t next() { return rng_.word(counter_++); }
  std::uint64_t uniform(std::uint64_t bound) { return rng_.uniform(counter_++, bound); }
  double unit() { return rng_.unit(counter_++); }
  bool coin() { return (next() >> 63) != 0; }

 private:
  CounterRandom rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace afterimage
