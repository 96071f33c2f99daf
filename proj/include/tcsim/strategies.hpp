#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tcsim/bitstring.hpp"
#include "tcsim/hamiltonian.hpp"
#include "tcsim/povm.hpp"
#include "tcsim/qmath.hpp"
#include "tcsim/rng.hpp"

namespace tcsim {

// Basis bit and measurement string held by the verifier: the prover-side
// state is H^h|m_1> (x) ... (x) H^h|m_N>.
struct CenterMessage {
  int h = 0;
  BitString m;
};

// Correction labels reported by the prover.
struct ProverOutcome {
  BitString x;
  BitString z;
};

// Probability distribution over N-bit strings, dense over all 2^N cells.
class AttackDistribution {
public:
  AttackDistribution(int n_bits, std::vector<double> probs);

  static AttackDistribution point_mass(const BitString& k);
  static AttackDistribution uniform(int n_bits);

  // JSON: object mapping bitstring literals to probabilities, e.g.
  // {"01": 0.5, "10": 0.5}. Unlisted strings get probability zero.
  static AttackDistribution from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  static AttackDistribution load(const std::filesystem::path& path);

  int n_bits() const { return n_bits_; }
  double probability(const BitString& k) const;
  const std::vector<double>& probabilities() const { return probs_; }

  BitString sample(Rng& rng) const;
  void validate(double tol = kInvariantTol) const;

private:
  int n_bits_;
  std::vector<double> probs_;
};

// Step 1 of the trusted-center protocol: uniform (h, m) plus the BB84
// product state handed to the prover.
std::pair<CenterMessage, PureState> trusted_center_sample(int n_qubits, Rng& rng);

// Honest prover measurement: the Bell-basis teleportation of e0 into the
// received register, pair j = (e0 qubit j, received qubit j). Elements are
// rank one: Pi_{x,z} = v v^dag with v = 2^{-N/2} X^x Z^z conj(e0).
Povm honest_teleport_povm(const PureState& e0, const Limits& limits = {});

// Decoded string m'_i = m_i xor (z_i if h else x_i).
BitString decoded_bits(const CenterMessage& cm, const ProverOutcome& po);

struct VerifierDecision {
  bool accept = false;
  int i = 0;
  int j = 0;
};

// Step 3: draw (i, j) with probability p_ij and accept iff
// (-1)^(m'_i + m'_j) = -s_ij.
VerifierDecision verifier_decide(const XxzzHamiltonian& h, const CenterMessage& cm,
                                 const ProverOutcome& po, Rng& rng);

// Acceptance marginalized over the (i, j) draw:
// sum_ij p_ij (1 - s_ij (-1)^(m'_i + m'_j)) / 2.
double verifier_accept_probability(const XxzzHamiltonian& h, const CenterMessage& cm,
                                   const ProverOutcome& po);

// Deterministic core of the masking attack: the drawn string k goes out as
// x = k xor m (h=0) or z = k xor m (h=1); the other register carries filler.
ProverOutcome attack_masked_outcome(const CenterMessage& cm, const BitString& draw,
                                    const BitString& filler);

// Full attack step: draw from D, mask with m, fill the unused register
// uniformly.
ProverOutcome classical_attack_outcome(const CenterMessage& cm,
                                       const AttackDistribution& d, Rng& rng);

// Point mass on the minimizer of <k|H_Z|k>: the best classical attack.
AttackDistribution optimal_attack_distribution(const XxzzHamiltonian& h);

}  // namespace tcsim
