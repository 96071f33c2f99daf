#include "tcsim/bitstring.hpp"

#include <bit>

#include "tcsim/errors.hpp"

namespace tcsim {

BitString::BitString(std::uint64_t index, int size) : index_(index), size_(size) {
  if (size < 0 || size > 63) {
    throw DimensionError("BitString size out of range: " + std::to_string(size));
  }
  if (size < 64 && (index >> size) != 0) {
    throw DimensionError("BitString index " + std::to_string(index) +
                         " does not fit in " + std::to_string(size) + " bits");
  }
}

BitString BitString::from_string(std::string_view s) {
  std::uint64_t idx = 0;
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw ValidationError("BitString literal must contain only 0/1: " + std::string(s));
    }
    idx = (idx << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return BitString(idx, static_cast<int>(s.size()));
}

int BitString::bit(int position) const {
  if (position < 0 || position >= size_) {
    throw DimensionError("BitString bit position out of range");
  }
  return static_cast<int>((index_ >> (size_ - 1 - position)) & 1u);
}

BitString BitString::with_bit(int position, int value) const {
  if (position < 0 || position >= size_) {
    throw DimensionError("BitString bit position out of range");
  }
  const std::uint64_t mask = std::uint64_t{1} << (size_ - 1 - position);
  std::uint64_t idx = value ? (index_ | mask) : (index_ & ~mask);
  return BitString(idx, size_);
}

int BitString::weight() const { return std::popcount(index_); }

BitString BitString::operator^(const BitString& other) const {
  if (other.size_ != size_) {
    throw DimensionError("BitString XOR requires equal lengths");
  }
  return BitString(index_ ^ other.index_, size_);
}

std::string BitString::str() const {
  std::string out(static_cast<std::size_t>(size_), '0');
  for (int j = 0; j < size_; ++j) {
    out[static_cast<std::size_t>(j)] = bit(j) ? '1' : '0';
  }
  return out;
}

}  // namespace tcsim
