#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tcsim/bitstring.hpp"
#include "tcsim/rng.hpp"
#include "tcsim/state.hpp"

namespace tcsim {

// One two-local coupling: weight p > 0 on the pair (i, j), i < j, with sign
// s in {+1, -1} shared by the XX and ZZ halves.
struct HamiltonianTerm {
  int i = 0;
  int j = 0;
  double p = 0.0;
  int s = +1;
};

// N-qubit Hamiltonian sum_{i<j} (p_ij/2) [ (I + s XX)/2 + (I + s ZZ)/2 ].
// Weights sum to 1, so the spectrum lives in [0, 1]. alpha/beta are optional
// promise thresholds carried as metadata.
class XxzzHamiltonian {
public:
  XxzzHamiltonian(int n_qubits, std::vector<HamiltonianTerm> terms,
                  std::optional<double> alpha = std::nullopt,
                  std::optional<double> beta = std::nullopt);

  int n_qubits() const { return n_qubits_; }
  std::int64_t dim() const { return std::int64_t{1} << n_qubits_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }
  std::optional<double> alpha() const { return alpha_; }
  std::optional<double> beta() const { return beta_; }

  // Seeded instance over a random graph: every pair kept with probability
  // edge_prob (at least one edge forced), uniform weights normalized to 1,
  // uniform signs.
  static XxzzHamiltonian random(int n_qubits, Rng& rng, double edge_prob = 0.6);

  // JSON schema:
  // { "n_qubits": N, "terms": [{"i":int,"j":int,"p":float,"s":+/-1},...],
  //   "alpha": float|null, "beta": float|null }
  // Weight sums within 1e-6 of 1 are renormalized; anything further off is
  // rejected.
  static XxzzHamiltonian from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  static XxzzHamiltonian load(const std::filesystem::path& path);

private:
  int n_qubits_;
  std::vector<HamiltonianTerm> terms_;
  std::optional<double> alpha_;
  std::optional<double> beta_;
};

// Dense 2^N x 2^N matrix of the Hamiltonian.
Matrix build_hamiltonian_matrix(const XxzzHamiltonian& h);

// Diagonal part H_Z = sum p_ij (I + s_ij Z_i Z_j)/2 as its diagonal vector
// and as a matrix.
Eigen::VectorXd build_hz_diagonal(const XxzzHamiltonian& h);
Matrix build_hz_matrix(const XxzzHamiltonian& h);

struct GroundState {
  double energy = 0.0;
  PureState state;
};

// Minimum eigenpair by dense diagonalization. On degeneracy returns the
// eigensolver's first minimal column (eigenvalues ascending).
GroundState ground_state(const XxzzHamiltonian& h, const Limits& limits = {});

// Tr(H rho). The imaginary residue must stay within 1e-9.
double energy(const XxzzHamiltonian& h, const DensityOperator& rho);
double energy(const XxzzHamiltonian& h, const PureState& psi);

struct DiagonalMinimum {
  BitString bitstring;
  double value = 0.0;
};

// Minimum of <k|H_Z|k> over bitstrings k; ties broken by the smallest k in
// lexicographic order.
DiagonalMinimum min_diagonal_energy(const XxzzHamiltonian& h);

// Promise-gap check for instances carrying thresholds: throws ValidationError
// unless beta - alpha >= min_gap.
void check_promise_gap(const XxzzHamiltonian& h, double min_gap);

}  // namespace tcsim
