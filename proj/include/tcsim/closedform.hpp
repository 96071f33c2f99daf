#pragma once

#include "tcsim/hamiltonian.hpp"
#include "tcsim/povm.hpp"
#include "tcsim/state.hpp"
#include "tcsim/strategies.hpp"

namespace tcsim {

// Closed-form acceptance values used as the oracle side of every report
// comparison. Deliberately computed without touching the protocol runners:
// only matrix algebra on qmath/hamiltonian primitives.

// Honest effective-state value Tr[rho (I - H)].
double cf_honest(const XxzzHamiltonian& h, const DensityOperator& rho);

// Frame-averaged measurement state sigma = 2^{-N} sum_xz X^x Z^z Pi_{x,z} Z^z X^x.
DensityOperator cf_sigma(const Povm& povm);

// Soundness value Tr[(I - H) sigma]; validates that sigma is a state.
double cf_povm_soundness(const XxzzHamiltonian& h, const Povm& povm);

// Masking-attack value p_succ * Tr[(I - H_Z) sum_k D(k)|k><k|].
double cf_attack(const XxzzHamiltonian& h, const AttackDistribution& d,
                 double p_succ);

// Direct-measurement protocol values: honest p_succ * Tr[|E0><E0|(I - H)]
// and malicious p_succ * Tr[(I - H_Z) sum_m D(m)|m><m|].
double cf_ma_honest(const XxzzHamiltonian& h, const PureState& e0, double p_succ);
double cf_ma_malicious(const XxzzHamiltonian& h, const AttackDistribution& d,
                       double p_succ);

// Effective teleported state of the measured-entangled channel:
// eta = Tr_B1[ sum_xz (sqrt(Pi_{x,z}) (x) X^x Z^z) rho (sqrt(Pi_{x,z}) (x) Z^z X^x) ].
DensityOperator cf_offline_eta(const DensityOperator& rho_b1b2, const Povm& povm_on_b1,
                            int m_qubits);

// 1 - Tr(H eta); validates that eta is a state.
double cf_offline(const XxzzHamiltonian& h, const DensityOperator& rho_b1b2,
               const Povm& povm_on_b1);

struct BellIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Both sides of the single-qubit teleportation identity
//   <phi_ab| (rho (x) H^h|m><m|H^h) |phi_ab>
//     = (1/2) <m| H^h Z^b X^a rho X^a Z^b H^h |m>.
BellIdentity bell_identity_check(const DensityOperator& rho, int alpha, int beta,
                                 int h, int m);

}  // namespace tcsim
