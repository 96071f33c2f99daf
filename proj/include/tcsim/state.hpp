#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "tcsim/bitstring.hpp"

namespace tcsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Default tolerance for type-invariant checks (Hermiticity, trace, PSD, norm).
inline constexpr double kInvariantTol = 1e-9;

// Dense-simulation size caps. The checks in this suite only need small
// registers; anything bigger than the defaults is almost certainly a mistake.
struct Limits {
  int max_state_qubits = 10;
  int max_povm_qubits = 8;
};

// Pure n-qubit state as a dense amplitude vector of length 2^n. Qubit 0 is
// the most significant index position; this convention is shared by every
// module.
class PureState {
public:
  PureState(int n_qubits, Vector amplitudes);

  // Computational basis state |k>.
  static PureState basis(const BitString& k);

  int n_qubits() const { return n_qubits_; }
  std::int64_t dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::uint64_t index) const {
    return amplitudes_(static_cast<Eigen::Index>(index));
  }

  double squared_norm() const { return amplitudes_.squaredNorm(); }

  class DensityOperator to_density() const;

  // Throws ValidationError unless the squared norm is 1 within tol.
  void validate(double tol = kInvariantTol) const;

private:
  int n_qubits_;
  Vector amplitudes_;
};

// Dense n-qubit density operator. validate() checks Hermiticity, unit trace,
// and positive semidefiniteness up to tolerance.
class DensityOperator {
public:
  DensityOperator(int n_qubits, Matrix matrix);

  static DensityOperator maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::int64_t dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }

  double trace_real() const { return matrix_.trace().real(); }

  void validate(double tol = kInvariantTol) const;

private:
  int n_qubits_;
  Matrix matrix_;
};

}  // namespace tcsim
