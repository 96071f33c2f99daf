#pragma once

#include <utility>
#include <vector>

#include "tcsim/bitstring.hpp"
#include "tcsim/state.hpp"

namespace tcsim {

// Outcome label of a two-register correction frame: (x, z) bitstrings.
struct PovmOutcome {
  BitString x;
  BitString z;

  auto operator<=>(const PovmOutcome&) const = default;
};

// Positive-operator-valued measure with labelled elements. The operators act
// on n_qubits; labels are (x, z) pairs whose length may differ from n_qubits
// (a measurement on an M-qubit register can carry N-bit correction labels).
class Povm {
public:
  struct Element {
    PovmOutcome outcome;
    Matrix op;
  };

  Povm(int n_qubits, std::vector<Element> elements);

  // Single-element POVM {I} labelled (0^label_size, 0^label_size).
  static Povm identity(int n_qubits, int label_size);

  // All 4^n elements equal to I / 4^n, labelled by every (x, z).
  static Povm uniform(int n_qubits);

  // Projective computational-basis measurement; outcome k labelled (x=k, z=0).
  static Povm computational_basis(int n_qubits);

  // Projective Bell-basis measurement on 2 qubits, labelled (alpha, beta).
  static Povm bell_basis();

  int n_qubits() const { return n_qubits_; }
  std::int64_t dim() const { return std::int64_t{1} << n_qubits_; }
  std::size_t size() const { return elements_.size(); }
  const Element& at(std::size_t i) const { return elements_[i]; }
  const std::vector<Element>& elements() const { return elements_; }

  // Throws ValidationError unless every element is PSD within tol and the
  // elements sum to the identity within tol.
  void validate(double tol = kInvariantTol) const;

private:
  int n_qubits_;
  std::vector<Element> elements_;
};

}  // namespace tcsim
