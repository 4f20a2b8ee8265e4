#pragma once

#include <cstdint>
#include <random>

namespace fieldspec {

// Seedable 64-bit generator with a fixed, platform-independent output
// sequence. The engine is std::mt19937_64, whose sequence is pinned by the
// standard; floating conversions are done here rather than through
// <random> distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);

  // Standard normal via Box-Muller (one value per call, no caching).
  double normal();

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; bijective mixing of a 64-bit word.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Child-seed splitting rule used by every Monte Carlo driver:
//   child(master, a)    = mix64(master + 0x9E3779B97F4A7C15 * (a + 1))
//   child(master, a, b) = child(child(master, a), b)
// Streams keyed by (cell, trial) are therefore independent of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b) noexcept;

}  // namespace fieldspec
