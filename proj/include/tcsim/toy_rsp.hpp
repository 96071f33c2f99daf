#pragma once

#include <map>
#include <string>

#include "tcsim/qmath.hpp"
#include "tcsim/rng.hpp"
#include "tcsim/strategies.hpp"
#include "tcsim/transcript.hpp"

namespace tcsim {

// Built-in one-round reference RSP used to exercise classical transcript
// simulation. It is a stand-in skeleton, not a secure ccRSP:
//   1. the verifier sends a uniformly random nonce a1 in {0,1};
//   2. the honest prover prepares
//        |psi(a1)> = 2^{-(N+1)/2} sum_{h,m} |h>|m> (x) H^h|m> (x) |a1 xor h>
//      over registers [h][m][payload][check], measures (h, m, check) in the
//      computational basis, and replies b1 = (h, m, c);
//   3. the verifier checks c = a1 xor h and outputs (h, m), which the model
//      treats as delivered over an authenticated ideal channel.
// After step 2 the prover's payload register holds exactly H^h|m>.
struct ToyRspProtocol {
  int n_qubits = 1;
};

// The prover's full pre-measurement state for a given nonce.
PureState toy_rsp_prepared_state(const ToyRspProtocol& protocol, int a1);

struct ToyRspRun {
  Transcript transcript;
  CenterMessage verifier_output;
  PureState residual;  // the prover's payload register after measurement
};

// Honest quantum execution: genuine state preparation and Born-rule
// measurement of the (h, m, check) registers.
ToyRspRun run_toy_rsp_quantum(const ToyRspProtocol& protocol, Rng& rng);

struct ClassicalSimulation {
  Transcript transcript;
  CenterMessage learned;          // read off the classical description
  PureState residual_description; // amplitudes of the state the prover "holds"
};

// Unbounded-prover simulation of the honest run: every message is sampled
// from classically computed Born probabilities and the prover tracks state
// descriptions instead of states. The transcript distribution matches the
// quantum execution exactly, and the simulator ends up knowing (h, m).
ClassicalSimulation classical_simulate_ccrsp(const ToyRspProtocol& protocol,
                                             Rng& rng);

// Exact transcript distributions of both execution paths, keyed by
// Transcript::key(). Used to assert total-variation distance zero.
std::map<std::string, double> toy_rsp_transcript_distribution_quantum(
    const ToyRspProtocol& protocol);
std::map<std::string, double> toy_rsp_transcript_distribution_classical(
    const ToyRspProtocol& protocol);

// Exact distribution of the verifier's (h, m) output (uniform for the honest
// execution), for composing the channel with downstream attacks.
std::vector<std::pair<CenterMessage, double>> toy_rsp_output_distribution(
    const ToyRspProtocol& protocol);

}  // namespace tcsim
