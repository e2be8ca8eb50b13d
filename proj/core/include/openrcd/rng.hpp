#pragma once

#include <cstdint>
#include <random>

namespace openrcd {

/// Stable seed derivation (splitmix64 finalizer). Trial k of an experiment
/// seeded with `master` runs on derive_seed(master, k); sub-streams of one
/// trajectory derive again with fixed stream tags so the event coin and the
/// replacement sampler never share state.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform generator over mt19937_64. Variate mapping is done by hand rather
/// than through std::uniform_*_distribution (whose output sequences are
/// implementation-defined), so equal seeds give identical draws on every
/// platform. Not thread-safe; give each worker its own instance.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi); returns lo when lo == hi.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform on {0, ..., bound-1}, unbiased via rejection. bound >= 1.
  std::uint64_t uniform_index(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = gen_();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace openrcd
