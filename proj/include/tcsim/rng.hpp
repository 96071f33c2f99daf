#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "tcsim/bitstring.hpp"

namespace tcsim {

// Splittable deterministic random generator. All randomness in the library
// flows through an explicitly passed Rng; there is no global state. Child
// streams derived via stream(i) are independent of draws made on the parent,
// so parallel trials can each own stream(trial_index).
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  // Independent child generator; depends only on (seed, index), not on how
  // many values were drawn from this generator.
  Rng stream(std::uint64_t index) const;

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53-bit resolution, bit-stable across platforms.
  double next_double();

  int next_bit();
  BitString next_bits(int size);

  // Standard normal via Box-Muller (two uniforms per pair of calls).
  double next_gaussian();

  // Index drawn proportionally to the weights; zero-weight cells are never
  // selected. Throws InternalError when the total weight is not positive.
  std::size_t sample_discrete(std::span<const double> weights);

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_spare_gaussian_ = false;
  double spare_gaussian_ = 0.0;
};

}  // namespace tcsim
