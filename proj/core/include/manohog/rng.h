#ifndef MANOHOG_RNG_H_
#define MANOHOG_RNG_H_

#include <cstdint>
#include <span>

namespace manohog {

// SplitMix64 (Steele, Lea, Flood 2014). Every derived quantity below is
// computed with explicit integer or IEEE arithmetic so that a given seed
// produces the same stream on every platform; std:: distributions are
// implementation-defined and are never used for anything that is persisted.
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next();

  // Uniform integer in [0, bound) by rejection of the biased tail.
  // bound must be positive.
  std::uint64_t UniformBelow(std::uint64_t bound);

  // Uniform double in [0, 1) built from the top 53 bits.
  double UniformUnit();

  double Uniform(double lo, double hi) { return lo + (hi - lo) * UniformUnit(); }

  // Standard normal via the Box-Muller transform (one value per call; the
  // paired value is discarded to keep the stream position simple).
  double Normal();

 private:
  std::uint64_t state_;
};

// Mixes a base seed with a stream index; used to give each generated image or
// each class its own independent stream.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

// Fisher-Yates shuffle driven by UniformBelow, iterating from the back.
template <typename T>
void Shuffle(std::span<T> items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.UniformBelow(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace manohog

#endif  // MANOHOG_RNG_H_
