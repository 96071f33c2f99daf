#pragma once

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "tcsim/bitstring.hpp"
#include "tcsim/povm.hpp"
#include "tcsim/rng.hpp"
#include "tcsim/state.hpp"

namespace tcsim {

// Single-qubit constants.
const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();
const Matrix& hadamard();

// Kronecker products following the global ordering: the first part owns the
// most significant index bits.
PureState tensor_product(std::span<const PureState> parts);
DensityOperator tensor_product(std::span<const DensityOperator> parts);

// Heterogeneous variant; throws KindMismatchError when the parts mix kinds.
using StateVariant = std::variant<PureState, DensityOperator>;
StateVariant tensor_product(std::span<const StateVariant> parts);

// Bell state |phi_{alpha,beta}> = (Z^beta (x) X^alpha)(|00>+|11>)/sqrt(2).
PureState bell_state(int alpha, int beta);
Matrix bell_projector(int alpha, int beta);

// BB84 product state H^h|m_1> (x) ... (x) H^h|m_N>.
PureState bb84_state(int h, const BitString& m);
DensityOperator bb84_density(int h, const BitString& m);

// Correction frame X^x Z^z = (x)_j X^{x_j} Z^{z_j} as a dense matrix.
Matrix pauli_frame_matrix(const BitString& x, const BitString& z);

// Conjugation X^x Z^z rho Z^z X^x. Trace preserving; an involution.
DensityOperator apply_pauli_frame(const DensityOperator& state,
                                  const BitString& x, const BitString& z);

// Partial trace keeping the listed qubits (ascending output order).
DensityOperator partial_trace(const DensityOperator& op, std::span<const int> keep);

// (1/2)||a - b||_1 via eigenvalues of the Hermitian difference.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

// PSD principal square root; small negative eigenvalues are clamped to zero.
Matrix matrix_sqrt_psd(const Matrix& m);

// Lift an operator acting on `targets` (in the given order) to n_total qubits.
Matrix embed(const Matrix& op, std::span<const int> targets, int n_total);

// Born probabilities Tr(Pi_k rho), clamped to [0, inf).
std::vector<double> povm_probabilities(const DensityOperator& state, const Povm& povm);

// Outcome drawn from the exact Born distribution plus the normalized
// post-measurement state sqrt(Pi) rho sqrt(Pi) / p.
std::pair<PovmOutcome, DensityOperator> sample_povm(const DensityOperator& state,
                                                    const Povm& povm, Rng& rng);

// Born draw alone, for protocol runs that never touch the post state.
PovmOutcome sample_povm_outcome(const DensityOperator& state, const Povm& povm,
                                Rng& rng);

// Computational-basis measurement of a qubit subset of a pure state.
std::pair<BitString, PureState> measure_computational(const PureState& state,
                                                      std::span<const int> qubits,
                                                      Rng& rng);

// Haar-ish random pure state (normalized complex Gaussian amplitudes).
PureState random_pure_state(int n_qubits, Rng& rng);

// Full-rank random density operator G G^dag / Tr from a complex Ginibre draw.
DensityOperator random_density_operator(int n_qubits, Rng& rng);

// Random POVM with 4^label_bits elements (label_bits < 0 means n_qubits):
// Ginibre-PSD raws A_k whitened by the inverse square root of their sum.
Povm random_povm(int n_qubits, Rng& rng, const Limits& limits = {},
                 int label_bits = -1);

}  // namespace tcsim
