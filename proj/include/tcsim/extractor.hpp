#pragma once

#include "tcsim/hamiltonian.hpp"
#include "tcsim/povm.hpp"
#include "tcsim/state.hpp"

namespace tcsim {

struct ExtractionResult {
  DensityOperator eta;
  double energy = 0.0;
  double p_acc_input = 0.0;
  double epsilon_bound = 0.0;  // 1 - p_acc
};

// Low-energy state pulled out of a trusted-center prover: prepare I/2^N,
// measure the prover's POVM, apply the controlled Z^z X^x correction, trace
// the outcome register. Built operationally (square roots and all).
DensityOperator extract_tc(const Povm& povm);

// Matrix form of the same state, 2^{-N} sum_xz Z^z X^x Pi_{x,z} X^x Z^z,
// kept as a separate code path so the two can check each other.
DensityOperator extract_tc_closed_form(const Povm& povm);

// Extractor for the measured-entangled setting: POVM on B1, controlled
// X^x Z^z on B2, trace out B1 and the outcome register.
DensityOperator extract_ccrsp(const DensityOperator& rho_b1b2,
                              const Povm& povm_on_b1, int m_qubits);

DensityOperator extract_ccrsp_closed_form(const DensityOperator& rho_b1b2,
                                          const Povm& povm_on_b1, int m_qubits);

// Checks the extraction identity Tr(eta H) = 1 - p_acc within 1e-9 and
// packages the result; throws ExtractionError (carrying both values) when
// the identity fails.
ExtractionResult verify_extraction(const XxzzHamiltonian& h,
                                   const DensityOperator& eta, double p_acc);

}  // namespace tcsim
