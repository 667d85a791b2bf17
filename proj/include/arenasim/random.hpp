#pragma once

#include <cstdint>
#include <random>

namespace arenasim {

// SplitMix64 finalizer. Used to scramble seeds and derive substreams.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based substream derivation: stream k of a master seed. Never
// derived from wall clock, so reruns are reproducible.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master + (stream + 1) * 0x9e3779b97f4a7c15ULL);
}

// A seeded random stream. Every stochastic operation takes one of these
// explicitly; callers that need independent randomness derive substreams
// by index. Draw routines avoid std::uniform_real_distribution so the
// produced values are identical across standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  RandomStream substream(std::uint64_t index) const {
    return RandomStream(derive_seed(seed_, index));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in the open interval (lo, hi); endpoints are redrawn.
  double uniform_open(double lo, double hi) {
    double v = lo;
    while (v == lo) {
      v = lo + uniform01() * (hi - lo);
    }
    return v;
  }

  // Unbiased uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t reject_above =
        UINT64_MAX - (UINT64_MAX % n + 1) % n;
    std::uint64_t x = engine_();
    while (x > reject_above) {
      x = engine_();
    }
    return x % n;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace arenasim
