#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tcsim {

// Fixed-width bitstring indexed by qubit position. Bit 0 is the most
// significant position of the packed basis-state index, matching the global
// qubit ordering: the string "01" denotes qubit0=0, qubit1=1 and corresponds
// to basis index 1 on two qubits.
class BitString {
public:
  BitString() = default;
  BitString(std::uint64_t index, int size);

  static BitString zeros(int size) { return BitString(0, size); }
  static BitString from_string(std::string_view s);

  int size() const { return size_; }
  std::uint64_t index() const { return index_; }

  int bit(int position) const;
  BitString with_bit(int position, int value) const;

  // Number of set bits.
  int weight() const;

  BitString operator^(const BitString& other) const;
  auto operator<=>(const BitString&) const = default;

  std::string str() const;

private:
  std::uint64_t index_ = 0;
  int size_ = 0;
};

}  // namespace tcsim
