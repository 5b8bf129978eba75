#pragma once

#include <cstdint>

namespace radolab {

/// Identifies one replica's randomness: (seed, stream) fully determines the
/// value stream, independent of platform, thread schedule, or std library.
struct ProcessRng {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stateless counter hash; used for out-of-order random degree queries.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t s = seed + counter * 0x9e3779b97f4a7c15ULL;
  (void)splitmix64(s);
  return splitmix64(s);
}

/// Degree-draw seed for a replica, kept distinct from subset-draw randomness.
inline std::uint64_t derive_degree_seed(std::uint64_t seed, std::uint64_t stream) {
  return counter_hash(seed ^ 0xd6e8feb86659fd93ULL, stream);
}

/// xoshiro256** seeded via splitmix64; our own engine so that draws are
/// bit-reproducible across standard libraries.
class RngEngine {
 public:
  explicit RngEngine(ProcessRng id) {
    std::uint64_t s = id.seed ^ (id.stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
    for (auto& word : state_) word = splitmix64(s);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform draw from {0, ..., n-1} (Lemire multiply-shift with rejection).
  std::uint64_t bounded(std::uint64_t n) {
    unsigned __int128 m = (unsigned __int128)next() * n;
    auto lo = (std::uint64_t)m;
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = (unsigned __int128)next() * n;
        lo = (std::uint64_t)m;
      }
    }
    return (std::uint64_t)(m >> 64);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4];
};

}  // namespace radolab
