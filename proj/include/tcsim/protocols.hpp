#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "tcsim/ccrsp.hpp"
#include "tcsim/hamiltonian.hpp"
#include "tcsim/povm.hpp"
#include "tcsim/strategies.hpp"

namespace tcsim {

enum class RunMode { Enumerate, Sample };

const char* run_mode_name(RunMode mode);
RunMode run_mode_from_name(const std::string& name);

struct RunOptions {
  std::int64_t trials = 100000;               // sample mode
  std::uint64_t budget = std::uint64_t{1} << 22;  // enumerate mode branch cap
  int workers = 1;
  Limits limits;
};

// Outcome of one protocol run, always carrying both the measured or
// enumerated value and the independent closed-form oracle value.
struct RunReport {
  std::string protocol_id;
  std::string mode;
  std::optional<std::int64_t> trials;          // sample mode
  double acceptance_estimate = 0.0;
  std::optional<double> std_error;             // sample mode
  std::optional<double> exact_probability;     // enumerate mode
  double closedform_value = 0.0;
  std::string closedform_source;
  double deviation = 0.0;
  std::optional<double> completeness_threshold;  // 1 - alpha, when provided
  std::optional<double> soundness_threshold;     // 1 - beta, when provided
};

// True when the closed form is an upper bound rather than an equality; the
// convention is a "-bound" suffix on the source label.
bool closedform_is_bound(const RunReport& report);

struct EnumerateOptions {
  std::uint64_t budget = std::uint64_t{1} << 22;
  int workers = 1;
};

// Exact expectation as an ordered sum of per-group sub-sums. Group values
// may be computed in parallel; the reduction order is fixed by group index,
// so the result does not depend on the worker count. Throws BudgetError when
// n_groups * branches_per_group exceeds the budget.
double enumerate_acceptance(std::uint64_t n_groups,
                            std::uint64_t branches_per_group,
                            const std::function<double(std::uint64_t)>& group_value,
                            const EnumerateOptions& opts = {});

// Provers.
struct HonestTeleportProver {};                  // teleports the ground state
struct PovmProver { Povm povm; };                // arbitrary measurement
struct ClassicalAttackProver { AttackDistribution d; };  // masking attack
struct HonestMeasureProver {};                   // measures E0 directly
struct DistributionProver { AttackDistribution d; };     // sends m ~ D

using TcProver = std::variant<HonestTeleportProver, PovmProver>;
using CcrspProver = std::variant<HonestTeleportProver, ClassicalAttackProver>;
using MaProver = std::variant<HonestMeasureProver, DistributionProver>;

// Trusted-center protocol (id "fig1-tc"): uniform BB84 states in, POVM
// labels out, pair test on the decoded bits.
RunReport run_tc_protocol(const XxzzHamiltonian& h, const TcProver& prover,
                          RunMode mode, Rng& rng, const RunOptions& opts = {});

// Trusted center replaced by a ccRSP model (id "fig2-ccrsp").
RunReport run_ccrsp_protocol(const XxzzHamiltonian& h, const CcrspModel& model,
                             const CcrspProver& prover, RunMode mode, Rng& rng,
                             const RunOptions& opts = {});

// Single-classical-message protocol (id "fig3-ma").
RunReport run_ma_protocol(const XxzzHamiltonian& h, const MaProver& prover,
                          double p_succ, RunMode mode, Rng& rng,
                          const RunOptions& opts = {});

// Off-line prover-to-verifier protocol (id "fig7-offline"): the prover
// prepares rho_b1b2, ships B2, the verifier measures it in a random basis,
// then the trusted-center steps 2-3 run on B1.
RunReport run_offline_protocol(const XxzzHamiltonian& h,
                               const DensityOperator& rho_b1b2, int m_qubits,
                               const Povm& prover_povm, RunMode mode, Rng& rng,
                               const RunOptions& opts = {});

// Honest Fig. 7 ingredients: Bell pairs plus the ground-state teleportation
// measurement on B1.
std::pair<DensityOperator, Povm> honest_offline_setup(const XxzzHamiltonian& h,
                                                      const Limits& limits = {});

}  // namespace tcsim
