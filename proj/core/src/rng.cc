#include "manohog/rng.h"

#include <cmath>
#include <numbers>

namespace manohog {

std::uint64_t SplitMix64::Next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::UniformBelow(std::uint64_t bound) {
  // Largest multiple of bound that fits; values at or above it are redrawn.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x = Next();
  while (x >= limit) x = Next();
  return x % bound;
}

double SplitMix64::UniformUnit() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

double SplitMix64::Normal() {
  double u1 = UniformUnit();
  while (u1 <= 0.0) u1 = UniformUnit();
  const double u2 = UniformUnit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (index * 0xD1B54A32D192ED03ULL));
  mixer.Next();
  return mixer.Next();
}

}  // namespace manohog
