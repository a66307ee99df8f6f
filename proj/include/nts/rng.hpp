#pragma once

#include <cassert>
#include <cstdint>

namespace nts {

// xoshiro256** (Blackman/Vigna), state filled from the seed with splitmix64.
// The generator is part of the reproducibility contract: the same seed yields
// the same draw sequence on every platform, and the algorithm name is recorded
// in benchmark metadata so runs can be replayed.
class Rng {
public:
  static constexpr const char *algorithm = "xoshiro256**";

  explicit Rng(uint64_t seed = 0) { reseed(seed); }

  void reseed(uint64_t seed) {
    seed_ = seed;
    uint64_t x = seed;
    for (auto &word : state_)
      word = splitmix64(x);
  }

  uint64_t seed() const { return seed_; }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform over [0, bound), unbiased (Lemire rejection).
  uint64_t next_below(uint64_t bound) {
    assert(bound > 0);
    unsigned __int128 m = (unsigned __int128)next_u64() * bound;
    auto low = (uint64_t)m;
    if (low < bound) {
      const uint64_t threshold = -bound % bound;
      while (low < threshold) {
        m = (unsigned __int128)next_u64() * bound;
        low = (uint64_t)m;
      }
    }
    return (uint64_t)(m >> 64);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bool() { return next_u64() >> 63; }

private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static uint64_t splitmix64(uint64_t &x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t seed_ = 0;
  uint64_t state_[4] = {};
};

} // namespace nts
