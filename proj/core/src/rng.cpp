#include "fieldspec/rng.hpp"

#include <cmath>
#include <numbers>

namespace fieldspec {

double Rng::uniform(double lo, double hi) {
  // lo + (hi - lo) * u can round up to hi for u close to 1.
  const double x = lo + (hi - lo) * uniform();
  return x < hi ? x : std::nextafter(hi, lo);
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a) noexcept {
  return mix64(master + 0x9E3779B97F4A7C15ull * (a + 1));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b) noexcept {
  return derive_seed(derive_seed(master, a), b);
}

}  // namespace fieldspec
