#pragma once

// Pseudorandom streams used by every sampler.
//
// The generator is SplitMix64 (Steele, Lea, Flood 2014): a 64-bit state that
// advances by the golden-ratio increment 0x9E3779B97F4A7C15, followed by the
// "mix13" finalizer
//
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z =  z ^ (z >> 31)
//
// The stream seeded with s returns mix13(s + k * 0x9E3779B97F4A7C15) for
// k = 1, 2, ...; any independent implementation can replay it.

#include <cstdint>

namespace coedge {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// The SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) from the top 53 bits of one draw.
  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Bernoulli threshold: a draw x succeeds iff x < floor(p * 2^64).
/// p >= 1 always succeeds, p <= 0 never does.
class BernoulliThreshold {
 public:
  explicit BernoulliThreshold(double p);
  bool accept(std::uint64_t draw) const noexcept { return always_ || draw < threshold_; }

 private:
  std::uint64_t threshold_ = 0;
  bool always_ = false;
};

/// Stateless per-trial seed: mix64(cell_key(master, cell) ^ mix64(trial)),
/// with cell_key(m, c) = mix64(mix64(m) ^ (c + 0x9E3779B97F4A7C15)).
/// Injective in `trial` for fixed (master, cell).
constexpr std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t cell_id,
                                          std::uint64_t trial_index) noexcept {
  const std::uint64_t cell_key = mix64(mix64(master) ^ (cell_id + kGoldenGamma));
  return mix64(cell_key ^ mix64(trial_index));
}

}  // namespace coedge
