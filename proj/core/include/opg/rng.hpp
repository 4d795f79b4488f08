#pragma once

#include <cstdint>

namespace opg {

/// SplitMix64 step; used for seed expansion and stream derivation.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256++ with SplitMix64 seeding (reference constants).  Each logical
/// stream is identified by (seed, stream index), so results never depend on
/// how streams are assigned to workers.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) : Xoshiro256pp(seed, 0) {}

  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 sm(seed + stream * 0x9E3779B97F4A7C15ULL);
    for (auto& word : state_) word = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace opg
