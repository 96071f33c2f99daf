#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tcsim/ccrsp.hpp"
#include "tcsim/closedform.hpp"
#include "tcsim/errors.hpp"
#include "tcsim/protocols.hpp"
#include "tcsim/toy_rsp.hpp"

using namespace tcsim;

namespace {

XxzzHamiltonian single_term(int s) { return XxzzHamiltonian(2, {{0, 1, 1.0, s}}); }

XxzzHamiltonian triangle() {
  return XxzzHamiltonian(3, {{0, 1, 1.0 / 3, +1}, {0, 2, 1.0 / 3, +1}, {1, 2, 1.0 / 3, +1}});
}

AttackDistribution random_distribution(int n_bits, Rng& rng) {
  std::vector<double> w(std::size_t{1} << n_bits);
  double total = 0.0;
  for (auto& v : w) {
    v = rng.next_double();
    total += v;
  }
  for (auto& v : w) {
    v /= total;
  }
  return AttackDistribution(n_bits, std::move(w));
}

}  // namespace

TEST_CASE("fig1 honest completeness on fixtures") {
  Rng rng(1);
  const XxzzHamiltonian plus = single_term(+1);
  const RunReport r1 =
      run_tc_protocol(plus, HonestTeleportProver{}, RunMode::Enumerate, rng);
  CHECK(r1.protocol_id == "fig1-tc");
  CHECK(std::abs(*r1.exact_probability - 1.0) < 1e-12);
  CHECK(r1.deviation < 1e-12);

  const XxzzHamiltonian tri = triangle();
  const RunReport r2 =
      run_tc_protocol(tri, HonestTeleportProver{}, RunMode::Enumerate, rng);
  const double lam = ground_state(tri).energy;
  CHECK(std::abs(*r2.exact_probability - (1.0 - lam)) < 1e-9);
  CHECK(r2.deviation < 1e-12);
}

TEST_CASE("fig1 honest acceptance clears the completeness threshold") {
  Rng rng(14);
  const XxzzHamiltonian with_thresholds(
      3, {{0, 1, 1.0 / 3, +1}, {0, 2, 1.0 / 3, +1}, {1, 2, 1.0 / 3, +1}}, 0.4, 0.6);
  const RunReport r = run_tc_protocol(with_thresholds, HonestTeleportProver{},
                                      RunMode::Enumerate, rng);
  REQUIRE(r.completeness_threshold.has_value());
  REQUIRE(r.soundness_threshold.has_value());
  CHECK(*r.completeness_threshold == 1.0 - 0.4);
  CHECK(*r.exact_probability >= *r.completeness_threshold - 1e-12);
}

TEST_CASE("fig1 uniform povm gives one half") {
  Rng rng(2);
  const RunReport r = run_tc_protocol(single_term(+1), PovmProver{Povm::uniform(2)},
                                      RunMode::Enumerate, rng);
  CHECK(std::abs(*r.exact_probability - 0.5) < 1e-12);
  CHECK(r.closedform_source == "cf-povm-soundness");
  CHECK(r.deviation < 1e-12);
}

TEST_CASE("fig1 random povms: soundness bound and sigma identity") {
  Rng rng(3);
  const XxzzHamiltonian instances[] = {single_term(+1), single_term(-1), triangle()};
  for (const auto& h : instances) {
    const double lam = ground_state(h).energy;
    for (int t = 0; t < 20; ++t) {
      Rng tr = rng.stream(static_cast<std::uint64_t>(t));
      const Povm povm = random_povm(h.n_qubits(), tr);
      const RunReport r =
          run_tc_protocol(h, PovmProver{povm}, RunMode::Enumerate, tr);
      CHECK(*r.exact_probability <= 1.0 - lam + 1e-9);
      CHECK(r.deviation < 1e-12);  // equals Tr[(I-H) sigma]
    }
  }
  CHECK_THROWS_AS(run_tc_protocol(single_term(+1), PovmProver{Povm::uniform(3)},
                                  RunMode::Enumerate, rng),
                  DimensionError);
}

TEST_CASE("fig2 ideal model") {
  Rng rng(4);
  const XxzzHamiltonian plus = single_term(+1);
  const RunReport honest = run_ccrsp_protocol(plus, IdealCcrsp{1.0},
                                              HonestTeleportProver{},
                                              RunMode::Enumerate, rng);
  CHECK(std::abs(*honest.exact_probability - 1.0) < 1e-12);

  const RunReport attack = run_ccrsp_protocol(
      plus, IdealCcrsp{0.9},
      ClassicalAttackProver{optimal_attack_distribution(plus)},
      RunMode::Enumerate, rng);
  CHECK(std::abs(*attack.exact_probability - 0.9) < 1e-12);
  CHECK(attack.closedform_source == "masking-attack");
  CHECK(attack.deviation < 1e-12);
}

TEST_CASE("fig2 triangle attack achieves exactly two thirds") {
  Rng rng(5);
  const XxzzHamiltonian tri = triangle();
  const RunReport attack = run_ccrsp_protocol(
      tri, IdealCcrsp{1.0}, ClassicalAttackProver{optimal_attack_distribution(tri)},
      RunMode::Enumerate, rng);
  CHECK(std::abs(*attack.exact_probability - 2.0 / 3.0) < 1e-12);
  CHECK(attack.deviation < 1e-12);
}

TEST_CASE("fig2 attack equals fig3 malicious exactly") {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    Rng tr = rng.stream(static_cast<std::uint64_t>(t));
    const XxzzHamiltonian h = XxzzHamiltonian::random(2 + (t % 2), tr);
    const AttackDistribution d = random_distribution(h.n_qubits(), tr);
    const double p_succ = 0.4 + 0.6 * tr.next_double();
    const RunReport fig2 = run_ccrsp_protocol(
        h, IdealCcrsp{p_succ}, ClassicalAttackProver{d}, RunMode::Enumerate, tr);
    const RunReport fig3 = run_ma_protocol(h, DistributionProver{d}, p_succ,
                                           RunMode::Enumerate, tr);
    CHECK(std::abs(*fig2.exact_probability - *fig3.exact_probability) < 1e-12);
    CHECK(fig2.deviation < 1e-12);
    CHECK(fig3.deviation < 1e-12);
  }
}

TEST_CASE("fig2 noisy honest stays below the honest-plus-epsilon bound") {
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    Rng tr = rng.stream(static_cast<std::uint64_t>(t));
    const XxzzHamiltonian h = XxzzHamiltonian::random(2, tr);
    const double noise = 0.3 * tr.next_double();
    const double p_succ = 0.5 + 0.5 * tr.next_double();
    const NoisyIdealCcrsp model{p_succ, noise};
    const RunReport noisy = run_ccrsp_protocol(h, model, HonestTeleportProver{},
                                               RunMode::Enumerate, tr);
    CHECK(closedform_is_bound(noisy));
    const RunReport ma = run_ma_protocol(h, HonestMeasureProver{}, p_succ,
                                         RunMode::Enumerate, tr);
    const double eps = noisy_ideal_epsilon(model, h.n_qubits());
    CHECK(*noisy.exact_probability <= *ma.exact_probability + eps + 1e-9);
    CHECK(*noisy.exact_probability <= noisy.closedform_value + 1e-9);
  }
}

TEST_CASE("fig2 measured-entangled honest on bell pairs equals fig1 honest") {
  Rng rng(8);
  const XxzzHamiltonian plus = single_term(+1);
  const MeasuredEntangledCcrsp model{1.0, bell_pairs_density(2), 2};
  const RunReport r = run_ccrsp_protocol(plus, model, HonestTeleportProver{},
                                         RunMode::Enumerate, rng);
  CHECK(std::abs(*r.exact_probability - 1.0) < 1e-12);
  CHECK(r.closedform_source == "eta-energy");
  CHECK(r.deviation < 1e-12);

  // incompatible M for an honest teleporting prover
  Rng rng2(9);
  const MeasuredEntangledCcrsp wide{1.0, random_density_operator(3, rng2), 1};
  CHECK_THROWS_AS(run_ccrsp_protocol(plus, wide, HonestTeleportProver{},
                                     RunMode::Enumerate, rng2),
                  KindMismatchError);
}

TEST_CASE("fig3 honest and point-mass values") {
  Rng rng(10);
  const XxzzHamiltonian plus = single_term(+1);
  const RunReport honest =
      run_ma_protocol(plus, HonestMeasureProver{}, 1.0, RunMode::Enumerate, rng);
  CHECK(std::abs(*honest.exact_probability - 1.0) < 1e-12);
  CHECK(honest.deviation < 1e-12);

  const RunReport zero = run_ma_protocol(
      plus, DistributionProver{AttackDistribution::point_mass(BitString::from_string("00"))},
      1.0, RunMode::Enumerate, rng);
  CHECK(*zero.exact_probability == 0.0);

  const XxzzHamiltonian tri = triangle();
  const RunReport tri_honest =
      run_ma_protocol(tri, HonestMeasureProver{}, 0.8, RunMode::Enumerate, rng);
  CHECK(std::abs(*tri_honest.exact_probability -
                 0.8 * (1.0 - ground_state(tri).energy)) < 1e-9);
  CHECK(tri_honest.deviation < 1e-12);
}

TEST_CASE("fig7 honest and mixed fixtures") {
  Rng rng(11);
  const XxzzHamiltonian plus = single_term(+1);
  auto [rho, povm] = honest_offline_setup(plus);
  const RunReport honest =
      run_offline_protocol(plus, rho, 2, povm, RunMode::Enumerate, rng);
  CHECK(std::abs(*honest.exact_probability - 1.0) < 1e-12);
  CHECK(honest.deviation < 1e-12);

  // prover ships I/2^N on B2: acceptance is one half
  std::vector<DensityOperator> parts{DensityOperator::maximally_mixed(1),
                                     DensityOperator::maximally_mixed(2)};
  const DensityOperator mixed =
      tensor_product(std::span<const DensityOperator>(parts));
  const RunReport half = run_offline_protocol(plus, mixed, 1, Povm::identity(1, 2),
                                              RunMode::Enumerate, rng);
  CHECK(std::abs(*half.exact_probability - 0.5) < 1e-12);
  CHECK(half.deviation < 1e-12);
}

TEST_CASE("fig7 random inputs match the eta-energy closed form") {
  Rng rng(12);
  const XxzzHamiltonian plus = single_term(+1);
  const double lam = ground_state(plus).energy;
  for (int t = 0; t < 10; ++t) {
    Rng tr = rng.stream(static_cast<std::uint64_t>(t));
    const int m = 1 + (t % 2);
    const DensityOperator rho = random_density_operator(m + 2, tr);
    const Povm povm = random_povm(m, tr, {}, 2);
    const RunReport r =
        run_offline_protocol(plus, rho, m, povm, RunMode::Enumerate, tr);
    CHECK(r.deviation < 1e-12);
    CHECK(*r.exact_probability <= 1.0 - lam + 1e-9);
  }
  CHECK_THROWS_AS(run_offline_protocol(plus, random_density_operator(2, rng), 1,
                                       Povm::identity(2, 2), RunMode::Enumerate,
                                       rng),
                  DimensionError);
}

TEST_CASE("enumerate_acceptance budget gate and determinism") {
  EnumerateOptions opts;
  opts.budget = 100;
  CHECK_THROWS_AS(
      enumerate_acceptance(101, 1, [](std::uint64_t) { return 0.0; }, opts),
      BudgetError);
  const auto value = [](std::uint64_t g) { return 1.0 / (1.0 + static_cast<double>(g)); };
  const double a = enumerate_acceptance(64, 1, value);
  const double b = enumerate_acceptance(64, 1, value);
  CHECK(a == b);
  EnumerateOptions threaded;
  threaded.workers = 4;
  CHECK(enumerate_acceptance(64, 1, value, threaded) == a);
}

TEST_CASE("sample mode agrees with enumerate mode") {
  const XxzzHamiltonian tri = triangle();
  RunOptions opts;
  opts.trials = 40000;

  struct Case {
    RunReport exact;
    RunReport sampled;
  };
  std::vector<Case> cases;

  Rng r1(100);
  cases.push_back({run_tc_protocol(tri, HonestTeleportProver{}, RunMode::Enumerate, r1),
                   run_tc_protocol(tri, HonestTeleportProver{}, RunMode::Sample, r1, opts)});
  Rng r2(101);
  const AttackDistribution d = optimal_attack_distribution(tri);
  cases.push_back(
      {run_ccrsp_protocol(tri, IdealCcrsp{0.8}, ClassicalAttackProver{d},
                          RunMode::Enumerate, r2),
       run_ccrsp_protocol(tri, IdealCcrsp{0.8}, ClassicalAttackProver{d},
                          RunMode::Sample, r2, opts)});
  Rng r3(102);
  cases.push_back(
      {run_ma_protocol(tri, HonestMeasureProver{}, 0.9, RunMode::Enumerate, r3),
       run_ma_protocol(tri, HonestMeasureProver{}, 0.9, RunMode::Sample, r3, opts)});
  Rng r4(103);
  const XxzzHamiltonian plus = single_term(+1);
  auto [rho, povm] = honest_offline_setup(plus);
  cases.push_back(
      {run_offline_protocol(plus, rho, 2, povm, RunMode::Enumerate, r4),
       run_offline_protocol(plus, rho, 2, povm, RunMode::Sample, r4, opts)});
  Rng r5(104);
  const NoisyIdealCcrsp noisy{0.9, 0.15};
  cases.push_back({run_ccrsp_protocol(tri, noisy, HonestTeleportProver{},
                                      RunMode::Enumerate, r5),
                   run_ccrsp_protocol(tri, noisy, HonestTeleportProver{},
                                      RunMode::Sample, r5, opts)});

  for (const Case& c : cases) {
    const double se = std::max(*c.sampled.std_error, 1e-9);
    CHECK(std::abs(c.sampled.acceptance_estimate - *c.exact.exact_probability) <
          4.0 * se + 1e-9);
  }
}

TEST_CASE("sample mode is deterministic given the seed") {
  const XxzzHamiltonian tri = triangle();
  RunOptions opts;
  opts.trials = 5000;
  Rng a(555);
  Rng b(555);
  const RunReport ra =
      run_tc_protocol(tri, HonestTeleportProver{}, RunMode::Sample, a, opts);
  const RunReport rb =
      run_tc_protocol(tri, HonestTeleportProver{}, RunMode::Sample, b, opts);
  CHECK(ra.acceptance_estimate == rb.acceptance_estimate);
  // worker count must not change the counts
  RunOptions threaded = opts;
  threaded.workers = 4;
  Rng c(555);
  const RunReport rc =
      run_tc_protocol(tri, HonestTeleportProver{}, RunMode::Sample, c, threaded);
  CHECK(rc.acceptance_estimate == ra.acceptance_estimate);
}

TEST_CASE("toy rsp composed with the masking attack reproduces its closed form") {
  // Enumerate the toy channel's (h, m) output, play the masking attack with
  // the learned message, marginalize the verifier's pair draw end to end.
  const XxzzHamiltonian instances[] = {single_term(+1), triangle()};
  for (const auto& h : instances) {
    const ToyRspProtocol protocol{h.n_qubits()};
    Rng rng(21);
    const AttackDistribution d = random_distribution(h.n_qubits(), rng);
    const auto outputs = toy_rsp_output_distribution(protocol);
    double total_mass = 0.0;
    double acceptance = 0.0;
    for (const auto& [cm, p] : outputs) {
      total_mass += p;
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << h.n_qubits()); ++k) {
        const double dk = d.probabilities()[k];
        if (dk <= 0.0) {
          continue;
        }
        const ProverOutcome po = attack_masked_outcome(
            cm, BitString(k, h.n_qubits()), BitString::zeros(h.n_qubits()));
        acceptance += p * dk * verifier_accept_probability(h, cm, po);
      }
    }
    CHECK(std::abs(total_mass - 1.0) < 1e-12);
    CHECK(std::abs(acceptance - cf_attack(h, d, 1.0)) < 1e-12);
  }
}
