#include "tcsim/rng.hpp"

#include <cmath>
#include <numbers>

#include "tcsim/errors.hpp"

namespace tcsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::stream(std::uint64_t index) const {
  return Rng(splitmix64(seed_ ^ splitmix64(index + 1)));
}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int Rng::next_bit() { return static_cast<int>(next_u64() >> 63); }

BitString Rng::next_bits(int size) {
  std::uint64_t mask = size >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size) - 1);
  return BitString(next_u64() & mask, size);
}

double Rng::next_gaussian() {
  if (have_spare_gaussian_) {
    have_spare_gaussian_ = false;
    return spare_gaussian_;
  }
  double u1 = next_double();
  while (u1 <= 0.0) {
    u1 = next_double();
  }
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_gaussian_ = r * std::sin(theta);
  have_spare_gaussian_ = true;
  return r * std::cos(theta);
}

std::size_t Rng::sample_discrete(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    total += w > 0.0 ? w : 0.0;
  }
  if (!(total > 0.0)) {
    throw InternalError("sample_discrete: total weight is not positive");
  }
  const double u = next_double() * total;
  double cum = 0.0;
  std::size_t last_positive = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) {
      continue;
    }
    cum += weights[i];
    last_positive = i;
    if (u < cum) {
      return i;
    }
  }
  // Round-off pushed u past the final cumulative value; return the last
  // positive-weight cell.
  if (last_positive == weights.size()) {
    throw InternalError("sample_discrete: no positive-weight cell");
  }
  return last_positive;
}

}  // namespace tcsim
