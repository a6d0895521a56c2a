#pragma once

#include <cstdint>

namespace cubewalk {

// Splittable 64-bit generator (splitmix64 with per-stream gamma).
// Deterministic given (seed, gamma); split() derives an independent stream,
// so parallel walkers can be seeded reproducibly from one root seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed,
                      std::uint64_t gamma = 0x9E3779B97F4A7C15ULL)
      : state_(seed), gamma_(gamma | 1ULL) {}

  std::uint64_t next() {
    state_ += gamma_;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  SplitMix64 split() {
    std::uint64_t s = next();
    std::uint64_t g = mix_gamma(next());
    return SplitMix64(s, g);
  }

  // Uniform in [0, 1), 53-bit mantissa.
  double uniform() { return (next() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform in {0, ..., n-1}.
  int below(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(next()) *
                             static_cast<unsigned __int128>(n)) >> 64);
  }

  bool coin() { return (next() & 1ULL) != 0; }

 private:
  static std::uint64_t mix_gamma(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
    z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
    z ^= z >> 33;
    return z | 1ULL;
  }

  std::uint64_t state_;
  std::uint64_t gamma_;
};

}  // namespace cubewalk
