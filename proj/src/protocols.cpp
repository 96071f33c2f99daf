#include "tcsim/protocols.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "tcsim/closedform.hpp"
#include "tcsim/errors.hpp"
#include "tcsim/parallel.hpp"

namespace tcsim {

namespace {

constexpr const char* kFig1 = "fig1-tc";
constexpr const char* kFig2 = "fig2-ccrsp";
constexpr const char* kFig3 = "fig3-ma";
constexpr const char* kFig7 = "fig7-offline";

double born_probability(const PureState& psi, const Matrix& op) {
  const double p = (psi.amplitudes().adjoint() * op * psi.amplitudes())(0).real();
  return std::max(p, 0.0);
}

void attach_thresholds(const XxzzHamiltonian& h, RunReport& report) {
  if (h.alpha()) {
    report.completeness_threshold = 1.0 - *h.alpha();
  }
  if (h.beta()) {
    report.soundness_threshold = 1.0 - *h.beta();
  }
}

RunReport finish_enumerate(const XxzzHamiltonian& h, const char* id, double exact,
                           double cf_value, std::string cf_source) {
  RunReport report;
  report.protocol_id = id;
  report.mode = run_mode_name(RunMode::Enumerate);
  report.acceptance_estimate = exact;
  report.exact_probability = exact;
  report.closedform_value = cf_value;
  report.closedform_source = std::move(cf_source);
  report.deviation = std::abs(exact - cf_value);
  attach_thresholds(h, report);
  return report;
}

RunReport finish_sample(const XxzzHamiltonian& h, const char* id,
                        std::int64_t accepts, std::int64_t trials, double cf_value,
                        std::string cf_source) {
  RunReport report;
  report.protocol_id = id;
  report.mode = run_mode_name(RunMode::Sample);
  report.trials = trials;
  const double est = static_cast<double>(accepts) / static_cast<double>(trials);
  report.acceptance_estimate = est;
  report.std_error = std::sqrt(est * (1.0 - est) / static_cast<double>(trials));
  report.closedform_value = cf_value;
  report.closedform_source = std::move(cf_source);
  report.deviation = std::abs(est - cf_value);
  attach_thresholds(h, report);
  return report;
}

// Shared sample-mode driver: counts accepting trials over per-trial streams.
std::int64_t count_accepts(std::int64_t trials, int workers, Rng& rng,
                           const std::function<bool(Rng&)>& trial) {
  if (trials < 1) {
    throw ValidationError("sample mode requires trials >= 1");
  }
  std::atomic<std::int64_t> accepts{0};
  parallel_for(static_cast<std::uint64_t>(trials), workers,
               [&](std::uint64_t t) {
                 Rng trial_rng = rng.stream(t);
                 if (trial(trial_rng)) {
                   accepts.fetch_add(1, std::memory_order_relaxed);
                 }
               });
  return accepts.load();
}

// The honest POVM has 4^N elements; refuse enumeration before materializing
// it when the branch budget cannot cover the run anyway.
void check_honest_budget(int n, const RunOptions& opts, RunMode mode) {
  if (mode != RunMode::Enumerate) {
    return;
  }
  const std::uint64_t sectors = std::uint64_t{1} << (n + 1);
  const std::uint64_t per_group = std::uint64_t{1} << (2 * n);
  if (sectors > opts.budget / per_group) {
    throw BudgetError("enumeration needs " + std::to_string(sectors) + " x " +
                      std::to_string(per_group) +
                      " branches, over the budget of " +
                      std::to_string(opts.budget) + "; switch to sample mode");
  }
}

Povm resolve_tc_povm(const XxzzHamiltonian& h, const TcProver& prover,
                     const Limits& limits) {
  if (std::holds_alternative<HonestTeleportProver>(prover)) {
    return honest_teleport_povm(ground_state(h, limits).state, limits);
  }
  const Povm& povm = std::get<PovmProver>(prover).povm;
  if (povm.n_qubits() != h.n_qubits()) {
    throw DimensionError("run_tc_protocol: POVM must act on the N received qubits");
  }
  return povm;
}

}  // namespace

const char* run_mode_name(RunMode mode) {
  return mode == RunMode::Enumerate ? "enumerate" : "sample";
}

RunMode run_mode_from_name(const std::string& name) {
  if (name == "enumerate") {
    return RunMode::Enumerate;
  }
  if (name == "sample") {
    return RunMode::Sample;
  }
  throw ConfigError("unknown mode \"" + name + "\" (want enumerate|sample)");
}

bool closedform_is_bound(const RunReport& report) {
  return report.closedform_source.ends_with("-bound");
}

double enumerate_acceptance(std::uint64_t n_groups,
                            std::uint64_t branches_per_group,
                            const std::function<double(std::uint64_t)>& group_value,
                            const EnumerateOptions& opts) {
  if (n_groups == 0) {
    throw ValidationError("enumerate_acceptance: no groups");
  }
  const std::uint64_t per_group = std::max<std::uint64_t>(branches_per_group, 1);
  if (n_groups > opts.budget / per_group) {
    throw BudgetError("enumeration needs " + std::to_string(n_groups) + " x " +
                      std::to_string(per_group) +
                      " branches, over the budget of " +
                      std::to_string(opts.budget) + "; switch to sample mode");
  }
  std::vector<double> values(n_groups, 0.0);
  parallel_for(n_groups, opts.workers,
               [&](std::uint64_t g) { values[g] = group_value(g); });
  KahanSum sum;
  for (double v : values) {
    sum.add(v);
  }
  return sum.value();
}

RunReport run_tc_protocol(const XxzzHamiltonian& h, const TcProver& prover,
                          RunMode mode, Rng& rng, const RunOptions& opts) {
  const int n = h.n_qubits();
  if (std::holds_alternative<HonestTeleportProver>(prover)) {
    check_honest_budget(n, opts, mode);
  }
  const Povm povm = resolve_tc_povm(h, prover, opts.limits);

  double cf_value = 0.0;
  std::string cf_source;
  if (std::holds_alternative<HonestTeleportProver>(prover)) {
    cf_value = cf_honest(h, ground_state(h, opts.limits).state.to_density());
    cf_source = "cf-honest";
  } else {
    cf_value = cf_povm_soundness(h, povm);
    cf_source = "cf-povm-soundness";
  }

  if (mode == RunMode::Enumerate) {
    // (h, m) sectors; the verifier's (i, j) draw is marginalized analytically.
    const std::uint64_t dn = std::uint64_t{1} << n;
    const double w = std::pow(2.0, -(n + 1));
    const double exact = enumerate_acceptance(
        2 * dn, povm.size(),
        [&](std::uint64_t g) {
          const int hbit = static_cast<int>(g >> n);
          const BitString m(g & (dn - 1), n);
          const PureState psi = bb84_state(hbit, m);
          const CenterMessage cm{hbit, m};
          KahanSum sum;
          for (const auto& elem : povm.elements()) {
            sum.add(born_probability(psi, elem.op) *
                    verifier_accept_probability(
                        h, cm, ProverOutcome{elem.outcome.x, elem.outcome.z}));
          }
          return w * sum.value();
        },
        {opts.budget, opts.workers});
    return finish_enumerate(h, kFig1, exact, cf_value, std::move(cf_source));
  }

  const std::int64_t accepts =
      count_accepts(opts.trials, opts.workers, rng, [&](Rng& trial_rng) {
        auto [cm, state] = trusted_center_sample(n, trial_rng);
        const PovmOutcome outcome =
            sample_povm_outcome(state.to_density(), povm, trial_rng);
        return verifier_decide(h, cm, ProverOutcome{outcome.x, outcome.z},
                               trial_rng)
            .accept;
      });
  return finish_sample(h, kFig1, accepts, opts.trials, cf_value,
                       std::move(cf_source));
}

RunReport run_ccrsp_protocol(const XxzzHamiltonian& h, const CcrspModel& model,
                             const CcrspProver& prover, RunMode mode, Rng& rng,
                             const RunOptions& opts) {
  const int n = h.n_qubits();
  validate_ccrsp_model(model);
  const double p_succ = ccrsp_p_succ(model);
  const bool honest = std::holds_alternative<HonestTeleportProver>(prover);
  const auto* me = std::get_if<MeasuredEntangledCcrsp>(&model);
  if (me && me->n_qubits() != n) {
    throw DimensionError("run_ccrsp_protocol: channel B2 register must hold N qubits");
  }
  if (honest && me && me->m_qubits != n) {
    throw KindMismatchError(
        "run_ccrsp_protocol: honest teleportation needs an N-qubit residual "
        "(M == N); this model delivers M = " +
        std::to_string(me->m_qubits));
  }
  if (!honest &&
      std::get<ClassicalAttackProver>(prover).d.n_bits() != n) {
    throw DimensionError("run_ccrsp_protocol: attack distribution width mismatch");
  }

  std::optional<Povm> povm;
  if (honest) {
    check_honest_budget(n, opts, mode);
    povm = honest_teleport_povm(ground_state(h, opts.limits).state, opts.limits);
  }

  double cf_value = 0.0;
  std::string cf_source;
  if (!honest) {
    cf_value = cf_attack(h, std::get<ClassicalAttackProver>(prover).d, p_succ);
    cf_source = "masking-attack";
  } else if (std::holds_alternative<IdealCcrsp>(model)) {
    cf_value =
        p_succ * cf_honest(h, ground_state(h, opts.limits).state.to_density());
    cf_source = "honest-ideal";
  } else if (const auto* noisy = std::get_if<NoisyIdealCcrsp>(&model)) {
    const double eps = noisy_ideal_epsilon(*noisy, n);
    cf_value =
        p_succ * cf_honest(h, ground_state(h, opts.limits).state.to_density()) +
        eps;
    cf_source = "honest-noisy-bound";
  } else {
    cf_value = p_succ * cf_offline(h, me->rho_b1b2, *povm);
    cf_source = "eta-energy";
  }

  if (mode == RunMode::Enumerate) {
    // (h, m) branch decomposition of the channel output.
    std::vector<CcrspBranch> branches;
    if (me) {
      branches = enumerate_measured_entangled(*me);
    } else {
      const double w = std::pow(2.0, -(n + 1));
      const bool noisy = std::holds_alternative<NoisyIdealCcrsp>(model);
      const double lambda = noisy ? std::get<NoisyIdealCcrsp>(model).noise : 0.0;
      for (int hbit = 0; hbit < 2; ++hbit) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
          const BitString mbits(m, n);
          DensityOperator state = bb84_density(hbit, mbits);
          if (noisy && lambda > 0.0) {
            state = depolarize_each_qubit(state, lambda);
          }
          branches.push_back(CcrspBranch{CenterMessage{hbit, mbits}, w,
                                         std::move(state)});
        }
      }
    }
    const std::uint64_t per_group =
        honest ? povm->size() : (std::uint64_t{1} << n);
    const double exact = enumerate_acceptance(
        branches.size(), per_group,
        [&](std::uint64_t g) {
          const CcrspBranch& branch = branches[g];
          if (branch.probability <= 0.0) {
            return 0.0;
          }
          KahanSum sum;
          if (honest) {
            const std::vector<double> probs =
                povm_probabilities(branch.state, *povm);
            for (std::size_t o = 0; o < povm->size(); ++o) {
              const auto& out = povm->at(o).outcome;
              sum.add(probs[o] * verifier_accept_probability(
                                     h, branch.cm, ProverOutcome{out.x, out.z}));
            }
          } else {
            const AttackDistribution& d =
                std::get<ClassicalAttackProver>(prover).d;
            for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
              const double dk = d.probabilities()[k];
              if (dk <= 0.0) {
                continue;
              }
              const ProverOutcome po = attack_masked_outcome(
                  branch.cm, BitString(k, n), BitString::zeros(n));
              sum.add(dk * verifier_accept_probability(h, branch.cm, po));
            }
          }
          return p_succ * branch.probability * sum.value();
        },
        {opts.budget, opts.workers});
    return finish_enumerate(h, kFig2, exact, cf_value, std::move(cf_source));
  }

  const std::int64_t accepts =
      count_accepts(opts.trials, opts.workers, rng, [&](Rng& trial_rng) {
        CenterMessage cm{0, BitString::zeros(n)};
        DensityOperator delivered = DensityOperator::maximally_mixed(1);
        if (me) {
          const CcrspSample sample = measured_entangled_ccrsp(*me, trial_rng);
          if (!sample.succeeded) {
            return false;  // failed ccRSP: the verifier rejects
          }
          cm = sample.cm;
          delivered = sample.residual;
        } else {
          if (trial_rng.next_double() >= p_succ) {
            return false;
          }
          auto [drawn_cm, state] = trusted_center_sample(n, trial_rng);
          cm = drawn_cm;
          delivered = state.to_density();
          if (const auto* noisy = std::get_if<NoisyIdealCcrsp>(&model);
              noisy && noisy->noise > 0.0) {
            delivered = depolarize_each_qubit(delivered, noisy->noise);
          }
        }
        ProverOutcome po{BitString::zeros(n), BitString::zeros(n)};
        if (honest) {
          const PovmOutcome outcome =
              sample_povm_outcome(delivered, *povm, trial_rng);
          po = ProverOutcome{outcome.x, outcome.z};
        } else {
          po = classical_attack_outcome(
              cm, std::get<ClassicalAttackProver>(prover).d, trial_rng);
        }
        return verifier_decide(h, cm, po, trial_rng).accept;
      });
  return finish_sample(h, kFig2, accepts, opts.trials, cf_value,
                       std::move(cf_source));
}

RunReport run_ma_protocol(const XxzzHamiltonian& h, const MaProver& prover,
                          double p_succ, RunMode mode, Rng& rng,
                          const RunOptions& opts) {
  const int n = h.n_qubits();
  if (!(p_succ > 0.0) || p_succ > 1.0) {
    throw ValidationError("run_ma_protocol: p_succ must lie in (0, 1]");
  }
  const bool honest = std::holds_alternative<HonestMeasureProver>(prover);

  std::optional<PureState> e0;
  std::optional<PureState> e0_hadamard;
  if (honest) {
    e0 = ground_state(h, opts.limits).state;
    Matrix hn = Matrix::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
      Matrix next(hn.rows() * 2, hn.cols() * 2);
      next.block(0, 0, hn.rows(), hn.cols()) = hn / std::sqrt(2.0);
      next.block(0, hn.cols(), hn.rows(), hn.cols()) = hn / std::sqrt(2.0);
      next.block(hn.rows(), 0, hn.rows(), hn.cols()) = hn / std::sqrt(2.0);
      next.block(hn.rows(), hn.cols(), hn.rows(), hn.cols()) =
          -hn / std::sqrt(2.0);
      hn = std::move(next);
    }
    e0_hadamard = PureState(n, hn * e0->amplitudes());
  }

  double cf_value = 0.0;
  std::string cf_source;
  if (honest) {
    cf_value = cf_ma_honest(h, *e0, p_succ);
    cf_source = "ma-honest";
  } else {
    const auto& d = std::get<DistributionProver>(prover).d;
    if (d.n_bits() != n) {
      throw DimensionError("run_ma_protocol: distribution width mismatch");
    }
    cf_value = cf_ma_malicious(h, d, p_succ);
    cf_source = "ma-malicious";
  }

  // The verifier's test only sees m, so it reuses the trusted-center rule
  // with an all-zero correction.
  const auto accept_m = [&](const BitString& m) {
    return verifier_accept_probability(
        h, CenterMessage{0, m},
        ProverOutcome{BitString::zeros(n), BitString::zeros(n)});
  };

  if (mode == RunMode::Enumerate) {
    const std::uint64_t dn = std::uint64_t{1} << n;
    double exact = 0.0;
    if (honest) {
      // Measurement distribution of E0 in basis h: amplitudes of (H^h)E0.
      exact = enumerate_acceptance(
          2 * dn, 1,
          [&](std::uint64_t g) {
            const int hbit = static_cast<int>(g >> n);
            const std::uint64_t m = g & (dn - 1);
            const Vector& amps =
                hbit ? e0_hadamard->amplitudes() : e0->amplitudes();
            const double pm = std::norm(amps(static_cast<Eigen::Index>(m)));
            return p_succ * 0.5 * pm * accept_m(BitString(m, n));
          },
          {opts.budget, opts.workers});
    } else {
      const auto& d = std::get<DistributionProver>(prover).d;
      exact = enumerate_acceptance(
          dn, 1,
          [&](std::uint64_t m) {
            const double dm = d.probabilities()[m];
            return dm > 0.0 ? p_succ * dm * accept_m(BitString(m, n)) : 0.0;
          },
          {opts.budget, opts.workers});
    }
    return finish_enumerate(h, kFig3, exact, cf_value, std::move(cf_source));
  }

  std::vector<int> all(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    all[static_cast<std::size_t>(q)] = q;
  }
  const std::int64_t accepts =
      count_accepts(opts.trials, opts.workers, rng, [&](Rng& trial_rng) {
        if (trial_rng.next_double() >= p_succ) {
          return false;
        }
        BitString m = BitString::zeros(n);
        if (honest) {
          const int hbit = trial_rng.next_bit();
          const PureState& to_measure = hbit ? *e0_hadamard : *e0;
          m = measure_computational(to_measure, all, trial_rng).first;
        } else {
          m = std::get<DistributionProver>(prover).d.sample(trial_rng);
        }
        return verifier_decide(
                   h, CenterMessage{0, m},
                   ProverOutcome{BitString::zeros(n), BitString::zeros(n)},
                   trial_rng)
            .accept;
      });
  return finish_sample(h, kFig3, accepts, opts.trials, cf_value,
                       std::move(cf_source));
}

RunReport run_offline_protocol(const XxzzHamiltonian& h,
                               const DensityOperator& rho_b1b2, int m_qubits,
                               const Povm& prover_povm, RunMode mode, Rng& rng,
                               const RunOptions& opts) {
  const int n = h.n_qubits();
  if (rho_b1b2.n_qubits() != m_qubits + n) {
    throw DimensionError("run_offline_protocol: rho must live on M+N qubits");
  }
  if (prover_povm.n_qubits() != m_qubits) {
    throw DimensionError("run_offline_protocol: POVM must act on the B1 register");
  }
  const MeasuredEntangledCcrsp channel{1.0, rho_b1b2, m_qubits};
  validate_ccrsp_model(CcrspModel{channel});

  const double cf_value = cf_offline(h, rho_b1b2, prover_povm);
  const std::string cf_source = "eta-energy";

  if (mode == RunMode::Enumerate) {
    const std::vector<CcrspBranch> branches = enumerate_measured_entangled(channel);
    const double exact = enumerate_acceptance(
        branches.size(), prover_povm.size(),
        [&](std::uint64_t g) {
          const CcrspBranch& branch = branches[g];
          if (branch.probability <= 0.0) {
            return 0.0;
          }
          const std::vector<double> probs =
              povm_probabilities(branch.state, prover_povm);
          KahanSum sum;
          for (std::size_t o = 0; o < prover_povm.size(); ++o) {
            const auto& out = prover_povm.at(o).outcome;
            sum.add(probs[o] * verifier_accept_probability(
                                   h, branch.cm, ProverOutcome{out.x, out.z}));
          }
          return branch.probability * sum.value();
        },
        {opts.budget, opts.workers});
    return finish_enumerate(h, kFig7, exact, cf_value, cf_source);
  }

  const std::int64_t accepts =
      count_accepts(opts.trials, opts.workers, rng, [&](Rng& trial_rng) {
        const CcrspSample sample = measured_entangled_ccrsp(channel, trial_rng);
        const PovmOutcome outcome =
            sample_povm_outcome(sample.residual, prover_povm, trial_rng);
        return verifier_decide(h, sample.cm,
                               ProverOutcome{outcome.x, outcome.z}, trial_rng)
            .accept;
      });
  return finish_sample(h, kFig7, accepts, opts.trials, cf_value, cf_source);
}

std::pair<DensityOperator, Povm> honest_offline_setup(const XxzzHamiltonian& h,
                                                      const Limits& limits) {
  return {bell_pairs_density(h.n_qubits()),
          honest_teleport_povm(ground_state(h, limits).state, limits)};
}

}  // namespace tcsim
