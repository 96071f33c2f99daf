#pragma once

#include <variant>
#include <vector>

#include "tcsim/povm.hpp"
#include "tcsim/qmath.hpp"
#include "tcsim/rng.hpp"
#include "tcsim/strategies.hpp"

namespace tcsim {

// Exact remote-state-preparation channel: on success the prover holds the
// BB84 product state matching the verifier's uniform (h, m).
struct IdealCcrsp {
  double p_succ = 1.0;
};

// Ideal channel followed by per-qubit depolarizing noise of strength
// `noise` on the prover's state. (h, m) stays uniform; epsilon is the trace
// distance between the average delivered state and the ideal average.
struct NoisyIdealCcrsp {
  double p_succ = 1.0;
  double noise = 0.0;
};

// Channel realized by projecting the B2 half of a prover-chosen (M+N)-qubit
// state onto random-basis product states: outcome (h, m) with probability
// P(h,m) = (1/2) Tr[(I_B1 (x) |phi_hm><phi_hm|_B2) rho], residual
// sigma_hm = Tr_B2[...] / (2 P(h,m)) on the M-qubit B1 register.
struct MeasuredEntangledCcrsp {
  double p_succ = 1.0;
  DensityOperator rho_b1b2;
  int m_qubits = 0;

  int n_qubits() const { return rho_b1b2.n_qubits() - m_qubits; }
};

using CcrspModel = std::variant<IdealCcrsp, NoisyIdealCcrsp, MeasuredEntangledCcrsp>;

double ccrsp_p_succ(const CcrspModel& model);

// Throws ValidationError when p_succ or the embedded state is invalid.
void validate_ccrsp_model(const CcrspModel& model, double tol = kInvariantTol);

// Per-qubit depolarizing channel rho -> product over qubits of
// (1 - lambda) rho + (lambda/4)(rho + X rho X + Y rho Y + Z rho Z).
DensityOperator depolarize_each_qubit(const DensityOperator& rho, double lambda);

// Trace distance between the noisy average output and the ideal average
// (both marginalized over the uniform (h, m)).
double noisy_ideal_epsilon(const NoisyIdealCcrsp& model, int n_qubits);

struct CcrspSample {
  bool succeeded = false;
  CenterMessage cm;
  DensityOperator residual;
};

// Sampling view of the measured-entangled channel: fails with probability
// 1 - p_succ, otherwise draws (h, m) from P and returns sigma_hm.
CcrspSample measured_entangled_ccrsp(const MeasuredEntangledCcrsp& model, Rng& rng);

struct CcrspBranch {
  CenterMessage cm;
  double probability = 0.0;  // P(h, m); sums to 1 over all branches
  DensityOperator state;     // sigma_hm (maximally mixed placeholder when P = 0)
};

// Exhaustive (h, m) branch decomposition of the channel, for enumeration.
std::vector<CcrspBranch> enumerate_measured_entangled(
    const MeasuredEntangledCcrsp& model);

// N Bell pairs laid out as [B1 qubits 0..N-1][B2 qubits N..2N-1] with pair
// j = (j, N+j): the honest input for which the channel reproduces the
// trusted center exactly.
PureState bell_pairs_state(int n_pairs);
DensityOperator bell_pairs_density(int n_pairs);

}  // namespace tcsim
